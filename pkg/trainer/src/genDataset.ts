/** Seeded toy-dataset synthesis: consent-notice texts assembled from
 * en/de templates, non-notices drawn from everyday page copy. */

import { writeFileSync } from "node:fs";

import { TrainingExample } from "./dataset.js";
import { mulberry32, pick, Rng } from "./rng.js";

const OPENERS_EN = [
  "We use cookies to {goal}.",
  "This website uses cookies and similar technologies to {goal}.",
  "We and our partners store and access information on your device to {goal}.",
  "We value your privacy. Our site relies on cookies to {goal}.",
  "To {goal}, we process personal data such as browsing behavior.",
  "Our partners use tracking technologies to {goal}.",
];

const GOALS_EN = [
  "personalize content and advertising",
  "analyze our traffic and improve your experience",
  "measure advertising performance",
  "remember your preferences and settings",
  "deliver personalized advertising",
  "provide analytics and improve our services",
  "show relevant content on this site",
];

const MIDDLES_EN = [
  "By clicking accept you consent to the use of these technologies.",
  "You can withdraw or change your consent at any time in the settings.",
  "Some cookies are necessary while others are used for marketing purposes.",
  "Your consent also covers data processing by third party vendors.",
  "See our privacy policy and cookie policy for details.",
  "We share usage data with analytics and advertising partners.",
  "Manage your preferences below or accept all categories.",
  "Declining keeps only the necessary cookies active.",
  "You may opt out of non essential tracking whenever you wish.",
];

const BUTTONS_EN = [
  "Accept all Decline",
  "Accept all Reject all",
  "Agree Close settings",
  "Accept Manage preferences",
  "Allow all Continue without accepting",
  "Got it Learn more",
  "Accept Decline Settings",
];

const OPENERS_DE = [
  "Wir verwenden Cookies, um {goal}.",
  "Diese Webseite nutzt Cookies und ähnliche Technologien, um {goal}.",
  "Wir und unsere Partner speichern Informationen auf Ihrem Gerät, um {goal}.",
];

const GOALS_DE = [
  "Inhalte und Anzeigen zu personalisieren",
  "unseren Datenverkehr zu analysieren",
  "Ihr Nutzererlebnis zu verbessern",
  "Ihre Einstellungen zu speichern",
];

const MIDDLES_DE = [
  "Mit einem Klick auf akzeptieren stimmen Sie der Verwendung zu.",
  "Sie können Ihre Einwilligung jederzeit in den Einstellungen widerrufen.",
  "Weitere Informationen finden Sie in unserer Datenschutzerklärung.",
];

const BUTTONS_DE = ["Alle akzeptieren Ablehnen", "Zustimmen Einstellungen", "Akzeptieren Ablehnen"];

const NON_NOTICES = [
  "Markets opened quietly this morning as traders waited for the quarterly report with energy and transport leading the way",
  "The ultimate chocolate chip cookie recipe these cookies come out soft and chewy every time cream the butter and sugar",
  "Join our newsletter subscribe for weekly updates and get ten percent off your first order enter your email below",
  "Sign in to your account username password forgot your password create a new account",
  "The home team extended its winning streak to nine games last night with a late goal in front of a sold out crowd",
  "Expect scattered showers through the afternoon with clearing skies by evening highs near twenty degrees",
  "Trail backpack forty liters eighty nine euros add to cart thermal flask one liter add to cart free shipping on orders",
  "Die schoensten Routen fuehren ueber blumenreiche Almen und vorbei an klaren Bergseen packen Sie feste Schuhe ein",
  "Starter plan five projects community support team plan unlimited projects priority support choose your plan today",
  "All systems operational scheduled maintenance window on sunday between two and four utc",
  "Photo gallery the winners of this years nature photography contest from over three thousand submissions",
  "Read the interview with the author about her latest novel and the research behind its historical setting",
  "Our store locations are open monday through saturday from nine to six find directions and parking information",
  "Breaking the city council voted to extend the riverside park and add a new cycling path along the northern bank",
  "Compare laptops by weight battery life and display quality in our annual buying guide for students",
  "Upload your resume and apply to open positions in engineering design and customer support",
];

const FILLER = [
  "latest updates from the newsroom",
  "tips and tricks for your next trip",
  "exclusive member offers this week",
  "top stories selected by our editors",
  "highlights from the weekend",
];

function noticeText(rng: Rng, lang: "en" | "de"): string {
  if (lang === "de") {
    const opener = pick(OPENERS_DE, rng).replace("{goal}", pick(GOALS_DE, rng));
    return `${opener} ${pick(MIDDLES_DE, rng)} ${pick(BUTTONS_DE, rng)}`;
  }
  const opener = pick(OPENERS_EN, rng).replace("{goal}", pick(GOALS_EN, rng));
  const middles = new Set<string>();
  const count = 1 + Math.floor(rng() * 2);
  while (middles.size < count) middles.add(pick(MIDDLES_EN, rng));
  return `${opener} ${[...middles].join(" ")} ${pick(BUTTONS_EN, rng)}`;
}

function nonNoticeText(rng: Rng): string {
  const base = pick(NON_NOTICES, rng);
  return rng() < 0.4 ? `${base} ${pick(FILLER, rng)}` : base;
}

export function generateDataset(perClass: number, seed: number): TrainingExample[] {
  const rng = mulberry32(seed);
  const examples: TrainingExample[] = [];
  for (let i = 0; i < perClass; i++) {
    const lang = rng() < 0.15 ? "de" : "en";
    examples.push({
      text: noticeText(rng, lang as "en" | "de"),
      label: "notice",
      language: lang,
      source_url: `synthetic://notice/${i}`,
    });
    examples.push({
      text: nonNoticeText(rng),
      label: "non_notice",
      language: "en",
      source_url: `synthetic://other/${i}`,
    });
  }
  return examples;
}

function main(): void {
  const args = process.argv.slice(2);
  const get = (flag: string, fallback: string) => {
    const i = args.indexOf(flag);
    return i >= 0 ? args[i + 1] : fallback;
  };
  const out = get("--out", "data/toy_consent_dataset.jsonl");
  const perClass = parseInt(get("--per-class", "120"), 10);
  const seed = parseInt(get("--seed", "7"), 10);
  const examples = generateDataset(perClass, seed);
  writeFileSync(out, examples.map((e) => JSON.stringify(e)).join("\n") + "\n", "utf-8");
  console.log(`wrote ${examples.length} examples to ${out}`);
}

const invoked = process.argv[1] ?? "";
if (invoked.endsWith("genDataset.js")) {
  main();
}
