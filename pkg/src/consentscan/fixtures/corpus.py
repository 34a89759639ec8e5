"""The synthetic fixture corpus.

Each fixture is a small page with a known ground truth, engineered to hit
one failure mode or success path of the detectors: keyword bait in page
text, foreign-language notices, shadow-DOM notices, visually offset
buttons, dynamic content that defeats screenshot comparison, and so on.

Truth geometry is derived from the declared inline styles by plain
arithmetic at the canonical 1280x800 test viewport, never from the layout
engine, so the fixtures stay an independent oracle for it. Truth notice
texts are the same string constants the page templates embed.

Pages meant to behave identically in a real browser carry inline JS
mirroring the declarative data-click-* attributes the built-in engine
interprets.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from ..evaluation import GroundTruthRecord, text_hash
from ..geometry import BBox

TRUTH_VIEWPORT = (1280, 800)
_VW, _VH = TRUTH_VIEWPORT

ANNOTATOR = "corpus-author"


class FixtureBehavior(str, Enum):
    STATIC = "static"
    HIDE_ON_ACCEPT = "hide_on_accept"
    HIDE_ON_BOTH = "hide_on_both"
    DYNAMIC_CONTENT = "dynamic_content"
    SHADOW_DOM = "shadow_dom"
    NO_NOTICE = "no_notice"
    FOREIGN_LANGUAGE = "foreign_language"
    Z_OVERLAY = "z_overlay"
    LINK_DECLINE = "link_decline"
    ONCE_PER_SESSION = "once_per_session"


@dataclass(frozen=True)
class Fixture:
    id: str
    behavior: FixtureBehavior
    html: str
    truth: GroundTruthRecord
    notice_text: str | None = None  # the exact subtree text of the notice


def _page(title: str, body: str) -> str:
    return (
        "<!DOCTYPE html>\n<html>\n<head><title>"
        + title
        + "</title></head>\n<body>\n"
        + body
        + "\n</body>\n</html>\n"
    )


def _truth(
    fixture_id: str,
    notice_text: str | None = None,
    bbox: BBox | None = None,
    decline: bool | None = None,
    colors_differ: bool | None = None,
    language: str | None = None,
) -> GroundTruthRecord:
    return GroundTruthRecord(
        url=f"/f/{fixture_id}",
        has_notice=notice_text is not None,
        notice_bbox=bbox,
        notice_text_hash=text_hash(notice_text) if notice_text else None,
        has_decline_first_layer=decline,
        colors_differ=colors_differ,
        language=language,
        annotator=ANNOTATOR,
    )


def _hide_js(*element_ids: str, cookie: str = "") -> str:
    parts = [
        f"document.getElementById('{eid}').style.display='none';" for eid in element_ids
    ]
    if cookie:
        parts.append(f"document.cookie='{cookie};path=/';")
    return "".join(parts)


_ARTICLE = (
    "<h1>The Daily Ledger</h1>"
    "<p>Markets opened quietly this morning as traders waited for the "
    "quarterly employment report. Analysts expect modest growth across "
    "most sectors, with energy and transport leading the way.</p>"
    "<p>In local news, the city council voted to extend the riverside "
    "park and add a new cycling path along the northern bank.</p>"
)

_FOOTER = '<p style="color:#666666">Imprint - Contact - Terms of service - 2026 The Daily Ledger</p>'


def _build_fixtures() -> list[Fixture]:
    fixtures: list[Fixture] = []

    # F01: classic bottom banner, no decline option, accept vs settings in
    # different colors. No z-index: text-classifier candidates must come
    # from the body edges, which the trailing footer dilutes.
    f01_msg = (
        "We use cookies to personalize content and to analyze our traffic. "
        "See our privacy policy for details."
    )
    f01_text = f"{f01_msg} Accept all Cookie settings"
    fixtures.append(
        Fixture(
            id="F01",
            behavior=FixtureBehavior.HIDE_ON_ACCEPT,
            notice_text=f01_text,
            truth=_truth(
                "F01",
                f01_text,
                BBox(0, _VH - 120, _VW, 120),
                decline=False,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Daily Ledger - Home",
                _ARTICLE
                + '<img src="http://{{ALT_ORIGIN}}/pixel.gif" width="1" height="1">'
                + '<div id="cookie-banner" class="cookie-banner" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:120px;'
                + 'background:#2d3e50;color:#ffffff;padding:16px">'
                + f'<p style="margin:0">{f01_msg}</p>'
                + '<button id="f01-accept" data-click-hide="cookie-banner" '
                + 'data-click-set-cookie="consent=all" '
                + f"onclick=\"{_hide_js('cookie-banner', cookie='consent=all')}\" "
                + 'style="background:#27ae60;color:#ffffff;border:0;width:120px;height:40px">'
                + "Accept all</button>"
                + '<button id="f01-settings" '
                + 'style="background:#95a5a6;color:#2d3e50;border:0;width:150px;height:40px">'
                + "Cookie settings</button>"
                + "</div>"
                + _FOOTER,
            ),
        )
    )

    # F02: centered modal, both buttons close it, identical button colors.
    f02_msg = (
        "This website uses cookies to ensure you get the best experience. "
        "We and our partners process data for personalized advertising and "
        "analytics. You can withdraw consent at any time."
    )
    f02_text = f"Your privacy {f02_msg} Accept all Reject all"
    fixtures.append(
        Fixture(
            id="F02",
            behavior=FixtureBehavior.HIDE_ON_BOTH,
            notice_text=f02_text,
            truth=_truth(
                "F02",
                f02_text,
                BBox(390, 250, 500, 260),
                decline=True,
                colors_differ=False,
                language="en",
            ),
            html=_page(
                "Travel Notes",
                _ARTICLE
                + '<div id="consent-modal" data-truth="notice" '
                + 'style="position:fixed;left:390px;top:250px;width:500px;height:260px;'
                + 'background:#ffffff;border:2px solid #444444;z-index:1000;padding:20px;color:#222222">'
                + '<h2 style="margin:0">Your privacy</h2>'
                + f"<p>{f02_msg}</p>"
                + '<button id="f02-accept" data-click-hide="consent-modal" '
                + 'data-click-set-cookie="consent=yes" '
                + f"onclick=\"{_hide_js('consent-modal', cookie='consent=yes')}\" "
                + 'style="background:#3498db;color:#ffffff;border:0;width:140px;height:42px">'
                + "Accept all</button>"
                + '<button id="f02-reject" data-click-hide="consent-modal" '
                + 'data-click-set-cookie="consent=no" '
                + f"onclick=\"{_hide_js('consent-modal', cookie='consent=no')}\" "
                + 'style="background:#3498db;color:#ffffff;border:0;width:140px;height:42px">'
                + "Reject all</button>"
                + "</div>"
                + _FOOTER,
            ),
        )
    )

    # F03: solid bottom banner with overlay z-index, decline present,
    # diverging button colors. The canonical perceptive-geometry fixture.
    f03_msg = (
        "We value your privacy. This site uses cookies for analytics, "
        "personalized content and advertising. By clicking Accept all you "
        "consent to the use of these technologies. You can decline "
        "non-essential cookies."
    )
    f03_text = f"{f03_msg} Accept all Decline"
    fixtures.append(
        Fixture(
            id="F03",
            behavior=FixtureBehavior.HIDE_ON_BOTH,
            notice_text=f03_text,
            truth=_truth(
                "F03",
                f03_text,
                BBox(0, _VH - 140, _VW, 140),
                decline=True,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Morning Brew News",
                _ARTICLE
                + '<div id="consent-banner" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:140px;'
                + 'background:#1b2a38;color:#ffffff;z-index:10;padding:18px">'
                + f'<p style="margin:0">{f03_msg}</p>'
                + '<button id="f03-accept" data-click-hide="consent-banner" '
                + 'data-click-set-cookie="choice=accept" '
                + f"onclick=\"{_hide_js('consent-banner', cookie='choice=accept')}\" "
                + 'style="background:#1e8449;color:#ffffff;border:0;width:130px;height:44px">'
                + "Accept all</button>"
                + '<button id="f03-decline" data-click-hide="consent-banner" '
                + 'data-click-set-cookie="choice=decline" '
                + f"onclick=\"{_hide_js('consent-banner', cookie='choice=decline')}\" "
                + 'style="background:#777777;color:#ffffff;border:0;width:130px;height:44px">'
                + "Decline</button>"
                + "</div>",
            ),
        )
    )

    # F04: German notice; keyword methods hit, English classifier misses.
    f04_msg = (
        "Wir verwenden Cookies, um Ihnen das beste Nutzererlebnis zu bieten. "
        "Durch die weitere Nutzung unserer Webseite stimmen Sie der "
        "Verwendung von Cookies zu."
    )
    f04_text = f"{f04_msg} Alle akzeptieren Ablehnen"
    fixtures.append(
        Fixture(
            id="F04",
            behavior=FixtureBehavior.FOREIGN_LANGUAGE,
            notice_text=f04_text,
            truth=_truth(
                "F04",
                f04_text,
                BBox(0, _VH - 110, _VW, 110),
                decline=True,
                colors_differ=False,
                language="de",
            ),
            html=_page(
                "Nachrichten am Morgen",
                "<h1>Nachrichten am Morgen</h1>"
                "<p>Der Stadtrat hat heute die Sanierung der alten "
                "Marktbruecke beschlossen. Die Arbeiten sollen im kommenden "
                "Fruehjahr beginnen und zwei Jahre dauern.</p>"
                + '<div id="cookie-hinweis" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:110px;'
                + 'background:#333333;color:#ffffff;z-index:50;padding:14px">'
                + f'<p style="margin:0">{f04_msg}</p>'
                + '<button id="f04-accept" data-click-hide="cookie-hinweis" '
                + 'data-click-set-cookie="einwilligung=alle" '
                + f"onclick=\"{_hide_js('cookie-hinweis', cookie='einwilligung=alle')}\" "
                + 'style="background:#e67e22;color:#ffffff;border:0;width:160px;height:40px">'
                + "Alle akzeptieren</button>"
                + '<button id="f04-decline" data-click-hide="cookie-hinweis" '
                + 'data-click-set-cookie="einwilligung=keine" '
                + f"onclick=\"{_hide_js('cookie-hinweis', cookie='einwilligung=keine')}\" "
                + 'style="background:#e67e22;color:#ffffff;border:0;width:120px;height:40px">'
                + "Ablehnen</button>"
                + "</div>",
            ),
        )
    )

    # F05: French notice with a no-consent continue button.
    f05_msg = (
        "Nous utilisons des cookies pour ameliorer votre experience de "
        "navigation et analyser notre trafic."
    )
    f05_text = f"{f05_msg} Tout accepter Continuer sans accepter"
    fixtures.append(
        Fixture(
            id="F05",
            behavior=FixtureBehavior.FOREIGN_LANGUAGE,
            notice_text=f05_text,
            truth=_truth(
                "F05",
                f05_text,
                BBox(0, _VH - 110, _VW, 110),
                decline=True,
                colors_differ=False,
                language="fr",
            ),
            html=_page(
                "Le Journal",
                "<h1>Le Journal</h1>"
                "<p>La mairie annonce la renovation du marche couvert. Les "
                "travaux commenceront au printemps prochain selon les plans "
                "presentes hier soir.</p>"
                + '<div id="bandeau-cookies" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:110px;'
                + 'background:#4a4a4a;color:#ffffff;z-index:50;padding:14px">'
                + f'<p style="margin:0">{f05_msg}</p>'
                + '<button id="f05-accept" data-click-hide="bandeau-cookies" '
                + 'data-click-set-cookie="consentement=tout" '
                + f"onclick=\"{_hide_js('bandeau-cookies', cookie='consentement=tout')}\" "
                + 'style="background:#b5b5b5;color:#222222;border:0;width:150px;height:40px">'
                + "Tout accepter</button>"
                + '<button id="f05-decline" data-click-hide="bandeau-cookies" '
                + 'data-click-set-cookie="consentement=rien" '
                + f"onclick=\"{_hide_js('bandeau-cookies', cookie='consentement=rien')}\" "
                + 'style="background:#b5b5b5;color:#222222;border:0;width:230px;height:40px">'
                + "Continuer sans accepter</button>"
                + "</div>",
            ),
        )
    )

    # F06: notice inside a declarative shadow root; the DOM walk cannot see
    # it, so every method misses. Annotated as a notice regardless.
    f06_msg = (
        "We use cookies and similar technologies to operate this site and "
        "measure advertising performance."
    )
    f06_text = f"{f06_msg} Accept Decline"
    fixtures.append(
        Fixture(
            id="F06",
            behavior=FixtureBehavior.SHADOW_DOM,
            notice_text=f06_text,
            truth=_truth(
                "F06",
                f06_text,
                BBox(0, _VH - 100, _VW, 100),
                decline=True,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Component Gallery",
                _ARTICLE
                + '<div id="shadow-host">'
                + '<template shadowrootmode="open">'
                + '<div id="shadow-banner" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:100px;'
                + 'background:#20303f;color:#ffffff;z-index:60;padding:12px">'
                + f"<p style=\"margin:0\">{f06_msg}</p>"
                + '<button style="background:#27ae60;color:#ffffff;border:0;width:110px;height:36px">Accept</button>'
                + '<button style="background:#888888;color:#ffffff;border:0;width:110px;height:36px">Decline</button>'
                + "</div></template></div>"
                + _FOOTER,
            ),
        )
    )

    # F07: overlay notice that never says "cookie"; only the text
    # classifier can find it.
    f07_msg = (
        "We value your privacy. We and our partners store and access "
        "information on your device, such as unique identifiers, to deliver "
        "personalized advertising and measure performance. You may accept "
        "or manage your preferences below."
    )
    f07_text = f"{f07_msg} Accept Manage preferences"
    fixtures.append(
        Fixture(
            id="F07",
            behavior=FixtureBehavior.Z_OVERLAY,
            notice_text=f07_text,
            truth=_truth(
                "F07",
                f07_text,
                BBox(340, 200, 600, 250),
                decline=False,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Streaming Hub",
                _ARTICLE
                + '<div id="privacy-overlay" data-truth="notice" '
                + 'style="position:fixed;left:340px;top:200px;width:600px;height:250px;'
                + 'background:#fafafa;border:1px solid #999999;z-index:800;padding:18px;color:#1c1c1c">'
                + f'<p style="margin:0">{f07_msg}</p>'
                + '<button id="f07-accept" data-click-hide="privacy-overlay" '
                + 'data-click-set-cookie="tcf=accept" '
                + f"onclick=\"{_hide_js('privacy-overlay', cookie='tcf=accept')}\" "
                + 'style="background:#e74c3c;color:#ffffff;border:0;width:120px;height:42px">'
                + "Accept</button>"
                + '<button id="f07-manage" '
                + 'style="background:#ecf0f1;color:#2c3e50;border:0;width:190px;height:42px">'
                + "Manage preferences</button>"
                + "</div>"
                + _FOOTER,
            ),
        )
    )

    # F08: decline styled as a link inside the notice; clicking it
    # navigates to a variant page without the banner.
    f08_msg = (
        "We use cookies to improve your experience and to show personalized "
        "advertising. Read our cookie policy to learn more."
    )
    f08_text = f"{f08_msg} Accept all Continue without accepting"
    fixtures.append(
        Fixture(
            id="F08",
            behavior=FixtureBehavior.LINK_DECLINE,
            notice_text=f08_text,
            truth=_truth(
                "F08",
                f08_text,
                BBox(0, _VH - 100, _VW, 100),
                decline=True,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Gadget Review",
                _ARTICLE
                + '<div id="privacy-bar" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:100px;'
                + 'background:#222f3e;color:#ffffff;padding:12px;z-index:15">'
                + f'<p style="margin:0">{f08_msg}</p>'
                + '<button id="f08-accept" data-click-hide="privacy-bar" '
                + 'data-click-set-cookie="c=1" '
                + f"onclick=\"{_hide_js('privacy-bar', cookie='c=1')}\" "
                + 'style="background:#10ac84;color:#ffffff;border:0;width:120px;height:40px">'
                + "Accept all</button>"
                + '<a id="f08-decline" href="/f/F08/declined" '
                + 'style="color:#c8d6e5">Continue without accepting</a>'
                + "</div>",
            ),
        )
    )

    # F09: covered by the bundled EasyList-style rules (.cc-window);
    # its only clickable is an anchor with a javascript: href.
    f09_msg = (
        "This website uses cookies to ensure you get the best experience "
        "on our website."
    )
    f09_text = f"{f09_msg} Got it!"
    fixtures.append(
        Fixture(
            id="F09",
            behavior=FixtureBehavior.HIDE_ON_ACCEPT,
            notice_text=f09_text,
            truth=_truth(
                "F09",
                f09_text,
                BBox(0, _VH - 90, _VW, 90),
                decline=False,
                colors_differ=False,
                language="en",
            ),
            html=_page(
                "Photo Archive",
                _ARTICLE
                + '<div id="f09-banner" class="cc-window cc-banner" role="dialog" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:90px;'
                + 'background:#3a3f44;color:#eeeeee;padding:14px">'
                + f"<span>{f09_msg}</span>"
                + '<a id="f09-dismiss" href="javascript:void(0)" role="button" '
                + 'data-click-hide="f09-banner" data-click-set-cookie="cookieconsent_status=dismiss" '
                + f"onclick=\"{_hide_js('f09-banner', cookie='cookieconsent_status=dismiss')}\" "
                + 'style="background:#3cb371;color:#ffffff;cursor:pointer;padding:8px">Got it!</a>'
                + "</div>"
                + _FOOTER,
            ),
        )
    )

    # F10: covered by the bundled IDCAC-style rules (#cookie-law-info-bar).
    f10_msg = (
        "This website uses cookies to improve your experience. We'll assume "
        "you're ok with this, but you can opt-out if you wish."
    )
    f10_text = f"{f10_msg} Accept"
    fixtures.append(
        Fixture(
            id="F10",
            behavior=FixtureBehavior.HIDE_ON_ACCEPT,
            notice_text=f10_text,
            truth=_truth(
                "F10",
                f10_text,
                BBox(0, 0, _VW, 80),
                decline=False,
                colors_differ=False,
                language="en",
            ),
            html=_page(
                "Cooking Weekly",
                '<div id="cookie-law-info-bar" data-truth="notice" '
                + 'style="position:fixed;left:0;top:0;width:100%;height:80px;'
                + 'background:#fff8dc;color:#333333;padding:12px;z-index:25">'
                + f"<span>{f10_msg}</span>"
                + '<button id="cookie_action_close_header" data-click-hide="cookie-law-info-bar" '
                + 'data-click-set-cookie="viewed_cookie_policy=yes" '
                + f"onclick=\"{_hide_js('cookie-law-info-bar', cookie='viewed_cookie_policy=yes')}\" "
                + 'style="background:#bd8f2f;color:#ffffff;border:0;width:110px;height:36px">'
                + "Accept</button>"
                + "</div>"
                + '<div style="margin-top:100px">'
                + _ARTICLE
                + "</div>",
            ),
        )
    )

    # F11: message panel and buttons are visually separated islands inside
    # one notice container; only the largest-containing contour strategy
    # recovers the full container.
    f11_msg = (
        "We use cookies to keep this site reliable and to measure which "
        "articles our readers enjoy the most."
    )
    f11_text = f"{f11_msg} Accept all Refuse"
    fixtures.append(
        Fixture(
            id="F11",
            behavior=FixtureBehavior.HIDE_ON_BOTH,
            notice_text=f11_text,
            truth=_truth(
                "F11",
                f11_text,
                BBox(0, _VH - 170, _VW, 170),
                decline=True,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Science Digest",
                _ARTICLE
                + '<div id="f11-container" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:170px;'
                + 'background:#123456;color:#ffffff;z-index:40">'
                + '<div id="f11-panel" style="position:absolute;left:200px;top:12px;'
                + 'width:600px;height:84px;background:#123456;border:6px solid #ffffff;padding:10px">'
                + f'<p style="margin:0">{f11_msg}</p>'
                + "</div>"
                + '<button id="f11-accept" data-click-hide="f11-container" '
                + 'data-click-set-cookie="f11=accept" '
                + f"onclick=\"{_hide_js('f11-container', cookie='f11=accept')}\" "
                + 'style="position:absolute;left:200px;top:112px;background:#2ecc71;'
                + 'color:#10331f;border:0;width:130px;height:44px">Accept all</button>'
                + '<button id="f11-refuse" data-click-hide="f11-container" '
                + 'data-click-set-cookie="f11=refuse" '
                + f"onclick=\"{_hide_js('f11-container', cookie='f11=refuse')}\" "
                + 'style="position:absolute;left:344px;top:112px;background:#bdc3c7;'
                + 'color:#2c3e50;border:0;width:110px;height:44px">Refuse</button>'
                + "</div>",
            ),
        )
    )

    # F12: decline exists and works, but a server-side content block
    # alternates between loads, defeating the screenshot comparison.
    f12_msg = (
        "This site uses cookies for analytics and to remember your "
        "preferences. Accept to continue or decline non-essential cookies."
    )
    f12_text = f"{f12_msg} Accept Decline"
    fixtures.append(
        Fixture(
            id="F12",
            behavior=FixtureBehavior.DYNAMIC_CONTENT,
            notice_text=f12_text,
            truth=_truth(
                "F12",
                f12_text,
                BBox(0, _VH - 130, _VW, 130),
                decline=True,
                colors_differ=False,
                language="en",
            ),
            html=_page(
                "Sports Tonight",
                "<h1>Sports Tonight</h1>"
                + '<div id="ad-slot" style="width:400px;height:120px;background:{{AD_COLOR}};'
                + 'color:#ffffff;padding:8px"><p style="margin:0">{{AD_TEXT}}</p></div>'
                + "<p>The home team extended its winning streak to nine games "
                + "last night with a late goal in front of a sold-out crowd.</p>"
                + '<div id="f12-banner" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:130px;'
                + 'background:#34495e;color:#ffffff;z-index:20;padding:16px">'
                + f'<p style="margin:0">{f12_msg}</p>'
                + '<button id="f12-accept" data-click-hide="f12-banner" '
                + 'data-click-set-cookie="f12=accept" '
                + f"onclick=\"{_hide_js('f12-banner', cookie='f12=accept')}\" "
                + 'style="background:#7f8c8d;color:#ffffff;border:0;width:120px;height:42px">'
                + "Accept</button>"
                + '<button id="f12-decline" data-click-hide="f12-banner" '
                + 'data-click-set-cookie="f12=decline" '
                + f"onclick=\"{_hide_js('f12-banner', cookie='f12=decline')}\" "
                + 'style="background:#7f8c8d;color:#ffffff;border:0;width:120px;height:42px">'
                + "Decline</button>"
                + "</div>",
            ),
        )
    )

    # F13: the server renders the banner only on the first request per
    # reset, so the re-detection step of the interaction protocol fails.
    f13_msg = (
        "This site uses cookies to enhance navigation and analyze usage. "
        "Accept all categories or decline optional cookies."
    )
    f13_text = f"{f13_msg} Accept all Decline all"
    fixtures.append(
        Fixture(
            id="F13",
            behavior=FixtureBehavior.ONCE_PER_SESSION,
            notice_text=f13_text,
            truth=_truth(
                "F13",
                f13_text,
                BBox(0, _VH - 110, _VW, 110),
                decline=True,
                colors_differ=True,
                language="en",
            ),
            html=_page(
                "Weather Now",
                "<h1>Weather Now</h1>"
                "<p>Expect scattered showers through the afternoon with "
                "clearing skies by evening. Highs near twenty degrees.</p>"
                + '<div id="f13-banner" data-truth="notice" '
                + 'style="position:fixed;left:0;bottom:0;width:100%;height:110px;'
                + 'background:#2c2c54;color:#ffffff;z-index:30;padding:14px">'
                + f'<p style="margin:0">{f13_msg}</p>'
                + '<button id="f13-accept" data-click-hide="f13-banner" '
                + 'style="background:#33d9b2;color:#123a30;border:0;width:130px;height:40px">'
                + "Accept all</button>"
                + '<button id="f13-decline" data-click-hide="f13-banner" '
                + 'style="background:#706fd3;color:#ffffff;border:0;width:130px;height:40px">'
                + "Decline all</button>"
                + "</div>",
            ),
        )
    )

    # N01: plain article, no notice; loads a third-party pixel and the
    # server sets a deterministic session cookie.
    fixtures.append(
        Fixture(
            id="N01",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N01"),
            html=_page(
                "Daily Ledger - Culture",
                _ARTICLE
                + '<img src="http://{{ALT_ORIGIN}}/pixel.gif" width="1" height="1">'
                + _FOOTER,
            ),
        )
    )

    # N02: keyword bait, recipe content mentioning cookies repeatedly.
    fixtures.append(
        Fixture(
            id="N02",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N02"),
            html=_page(
                "Grandma's Kitchen",
                "<h1>The ultimate chocolate chip cookie recipe</h1>"
                '<div id="recipe">'
                "<p>These cookies come out soft and chewy every time. Cream "
                "the butter and sugar, fold in the chocolate chips, and bake "
                "for twelve minutes at one hundred eighty degrees.</p>"
                "<p>For crispier cookies, flatten each cookie ball before "
                "baking. More cookie recipes and baking tips below.</p>"
                "</div>" + _FOOTER,
            ),
        )
    )

    # N03: second keyword bait, a functional note in page text.
    fixtures.append(
        Fixture(
            id="N03",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N03"),
            html=_page(
                "Account Portal",
                "<h1>Service status</h1>"
                "<p>All systems operational. Scheduled maintenance window on "
                "Sunday between 02:00 and 04:00 UTC.</p>"
                '<p id="note">This site uses cookies for session management '
                "and authentication.</p>" + _FOOTER,
            ),
        )
    )

    # N04: shop page with pointer-cursor cards and cart buttons.
    fixtures.append(
        Fixture(
            id="N04",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N04"),
            html=_page(
                "Gear Shop",
                "<h1>Featured gear</h1>"
                '<div style="cursor:pointer;background:#f4f4f4;width:300px;padding:10px">'
                "<p>Trail backpack 40L - 89.00</p>"
                '<button style="background:#2980b9;color:#ffffff;border:0;width:110px;height:36px">Add to cart</button>'
                "</div>"
                '<div style="cursor:pointer;background:#f4f4f4;width:300px;padding:10px">'
                "<p>Thermal flask 1L - 24.50</p>"
                '<button style="background:#2980b9;color:#ffffff;border:0;width:110px;height:36px">Add to cart</button>'
                "</div>" + _FOOTER,
            ),
        )
    )

    # N05: login form.
    fixtures.append(
        Fixture(
            id="N05",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N05"),
            html=_page(
                "Sign in",
                "<h1>Sign in to your account</h1>"
                "<form>"
                '<p>Username</p><input type="text" name="user" style="width:220px">'
                '<p>Password</p><input type="password" name="pass" style="width:220px">'
                '<br><input type="submit" value="Log in" style="background:#34495e;color:#ffffff;width:100px;height:34px">'
                "</form>" + _FOOTER,
            ),
        )
    )

    # N06: newsletter overlay with a high z-index but no consent language;
    # guards the classifier against overlay false positives.
    fixtures.append(
        Fixture(
            id="N06",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N06"),
            html=_page(
                "Outdoor Blog",
                _ARTICLE
                + '<div id="newsletter-popup" '
                + 'style="position:fixed;left:440px;top:260px;width:400px;height:220px;'
                + 'background:#ffffff;border:2px solid #666666;z-index:500;padding:16px;color:#333333">'
                + "<h2 style=\"margin:0\">Join our newsletter</h2>"
                + "<p>Subscribe for weekly updates and get ten percent off "
                + "your first order. Enter your email below.</p>"
                + '<button id="n06-subscribe" style="background:#e67e22;color:#ffffff;border:0;width:120px;height:40px">Subscribe</button>'
                + '<button id="n06-close" data-click-hide="newsletter-popup" '
                + f"onclick=\"{_hide_js('newsletter-popup')}\" "
                + 'style="background:#dddddd;color:#333333;border:0;width:110px;height:40px">No thanks</button>'
                + "</div>"
                + _FOOTER,
            ),
        )
    )

    # N07: German article, no keyword, no notice.
    fixtures.append(
        Fixture(
            id="N07",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N07"),
            html=_page(
                "Wanderlust",
                "<h1>Wandern in den Alpen</h1>"
                "<p>Die schoensten Routen fuehren ueber blumenreiche Almen "
                "und vorbei an klaren Bergseen. Packen Sie feste Schuhe und "
                "ausreichend Wasser ein.</p>"
                "<p>Im Herbst lohnt sich die Tour zum Grossen Gipfel ganz "
                "besonders, wenn die Laerchen golden leuchten.</p>" + _FOOTER,
            ),
        )
    )

    # N08: pricing page with plan buttons.
    fixtures.append(
        Fixture(
            id="N08",
            behavior=FixtureBehavior.NO_NOTICE,
            truth=_truth("N08"),
            html=_page(
                "Plans and pricing",
                "<h1>Plans and pricing</h1>"
                "<p>Starter: five projects, community support - 0 per month.</p>"
                '<button style="background:#16a085;color:#ffffff;border:0;width:130px;height:38px">Choose starter</button>'
                "<p>Team: unlimited projects, priority support - 29 per month.</p>"
                '<button style="background:#16a085;color:#ffffff;border:0;width:130px;height:38px">Choose team</button>'
                + _FOOTER,
            ),
        )
    )

    return fixtures


FIXTURES: list[Fixture] = _build_fixtures()

_BY_ID = {f.id: f for f in FIXTURES}


def fixture_by_id(fixture_id: str) -> Fixture:
    return _BY_ID[fixture_id]


def truth_records(base_url: str = "") -> list[GroundTruthRecord]:
    """Truth records with urls optionally rebased onto a server origin."""
    from dataclasses import replace

    if not base_url:
        return [f.truth for f in FIXTURES]
    return [replace(f.truth, url=base_url.rstrip("/") + f.truth.url) for f in FIXTURES]
