/** Word tokenization matching the scanner's classifier: lowercased \w+
 * runs (unicode letters, digits, underscore), each distinct token counted
 * once by the consumers. */

export function tokenize(text: string): string[] {
  return text.toLowerCase().match(/[\p{L}\p{N}_]+/gu) ?? [];
}

export function tokenSet(text: string): Set<string> {
  return new Set(tokenize(text));
}
