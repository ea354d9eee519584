#!/usr/bin/env python3
"""Generate the bundled 160-document synthetic news corpus.

Six fictional storylines in the coastal city of Belmar unfold over three
months. The output is deterministic (seeded) and frozen at
tests/data/synthetic_160.jsonl; rerunning this script reproduces the file
byte for byte.
"""
from __future__ import annotations

import json
import random
from pathlib import Path

OUT = Path(__file__).resolve().parents[1] / "tests" / "data" / "synthetic_160.jsonl"

TOPICS = {
    "strike": {
        "count": 34,
        "entities": ["Belmar Port Authority", "Dockworkers Union", "Elena Voss"],
        "subjects": [
            "dock workers", "union members", "port operators", "crane crews",
            "freight handlers", "terminal staff",
        ],
        "actions": [
            "extended the strike", "rejected the wage offer", "picketed the gates",
            "paused negotiations", "rallied downtown", "blocked cargo lanes",
            "demanded arbitration", "voted on the contract",
        ],
        "objects": [
            "container backlog", "wage dispute", "overtime rules", "pension terms",
            "shipping delays", "contract talks",
        ],
        "headline": "Port strike {phase}: {subject} {action}",
        "body": (
            "The Belmar port strike {phase_l} as {subject} {action} over the {object}. "
            "Officials from the Belmar Port Authority said the {object2} kept vessels waiting offshore. "
            "Mayor Elena Voss urged both sides to return to mediation while the Dockworkers Union "
            "pressed its demands, and economists warned the stoppage was rippling through regional trade."
        ),
    },
    "storm": {
        "count": 32,
        "entities": ["Hurricane Dalia", "National Weather Bureau", "Governor Ruiz"],
        "subjects": [
            "forecasters", "emergency crews", "coastal residents", "utility teams",
            "shelter volunteers", "harbor patrols",
        ],
        "actions": [
            "tracked the storm surge", "issued evacuation orders", "reinforced the seawall",
            "restored downed lines", "opened storm shelters", "mapped the flood zone",
            "staged relief supplies", "closed the causeway",
        ],
        "objects": [
            "landfall forecast", "flood warnings", "wind damage", "power outage",
            "evacuation routes", "rainfall totals",
        ],
        "headline": "Hurricane Dalia {phase}: {subject} {action}",
        "body": (
            "Hurricane Dalia {phase_l} while {subject} {action} along the Belmar coastline. "
            "The National Weather Bureau updated its {object} as bands of rain moved inland. "
            "Governor Ruiz declared a state of emergency, and officials reviewed the {object2} "
            "before the next advisory, urging residents to follow evacuation guidance."
        ),
    },
    "election": {
        "count": 30,
        "entities": ["Elena Voss", "Marcus Chen", "Belmar City Council"],
        "subjects": [
            "campaign volunteers", "city voters", "debate moderators", "poll workers",
            "precinct captains", "student canvassers",
        ],
        "actions": [
            "sparred over housing", "courted union votes", "filed new disclosures",
            "launched ad campaigns", "debated the budget", "canvassed the wards",
            "contested the tally", "certified the results",
        ],
        "objects": [
            "mayoral race", "housing platform", "turnout projections", "campaign finance",
            "runoff rules", "ballot measures",
        ],
        "headline": "Election briefing {phase}: {subject} {action}",
        "body": (
            "The Belmar mayoral race {phase_l} as {subject} {action} ahead of the vote. "
            "Incumbent Elena Voss and challenger Marcus Chen traded proposals on the {object}, "
            "while the Belmar City Council weighed the {object2}. Analysts said turnout in the "
            "harbor wards could decide the election."
        ),
    },
    "arena": {
        "count": 24,
        "entities": ["Belmar Arena", "Orion Construction", "Inspector General Holt"],
        "subjects": [
            "city auditors", "site engineers", "council members", "whistleblowers",
            "budget examiners", "safety inspectors",
        ],
        "actions": [
            "flagged cost overruns", "subpoenaed invoices", "halted foundation work",
            "reviewed change orders", "testified at the hearing", "audited the contracts",
            "inspected the girders", "released the findings",
        ],
        "objects": [
            "construction scandal", "missing funds", "bid irregularities", "safety report",
            "project timeline", "oversight hearing",
        ],
        "headline": "Arena inquiry {phase}: {subject} {action}",
        "body": (
            "The Belmar Arena investigation {phase_l} after {subject} {action} tied to the {object}. "
            "Contractor Orion Construction disputed the allegations while Inspector General Holt "
            "expanded the probe into the {object2}. Council members demanded testimony before "
            "approving further payments on the stadium project."
        ),
    },
    "expo": {
        "count": 22,
        "entities": ["NovaGrid", "TechHarbor Expo", "Dana Okafor"],
        "subjects": [
            "startup founders", "exhibit crews", "venture scouts", "robotics teams",
            "conference staff", "student hackers",
        ],
        "actions": [
            "unveiled the prototype", "demoed the microgrid", "signed pilot deals",
            "opened the showcase", "pitched investors", "launched the developer kit",
            "announced the keynote", "expanded the floor plan",
        ],
        "objects": [
            "battery platform", "expo lineup", "funding round", "smart harbor sensors",
            "launch schedule", "innovation prize",
        ],
        "headline": "TechHarbor expo {phase}: {subject} {action}",
        "body": (
            "Preparations for the TechHarbor Expo {phase_l} as {subject} {action} around the {object}. "
            "Local firm NovaGrid drew crowds with its energy storage demo, and organizer Dana Okafor "
            "said registrations doubled. Sponsors reviewed the {object2} as the waterfront venue "
            "filled with exhibits."
        ),
    },
    "clinic": {
        "count": 18,
        "entities": ["Riverside Clinic", "Belmar Health Department", "Dr. Ana Reyes"],
        "subjects": [
            "health workers", "lab technicians", "school nurses", "outreach teams",
            "epidemiologists", "pharmacy staff",
        ],
        "actions": [
            "traced the outbreak", "expanded testing hours", "delivered vaccine doses",
            "posted new guidance", "screened commuters", "briefed the council",
            "opened a field site", "updated case counts",
        ],
        "objects": [
            "fever outbreak", "testing backlog", "vaccination drive", "case cluster",
            "water advisory", "clinic capacity",
        ],
        "headline": "Health watch {phase}: {subject} {action}",
        "body": (
            "The Riverside Clinic {phase_l} while {subject} {action} to contain the {object}. "
            "The Belmar Health Department reported shifting case counts, and Dr. Ana Reyes asked "
            "residents to watch for symptoms. Planners reassessed the {object2} as appointments "
            "filled through the week."
        ),
    },
}

PHASES = [
    "day {n}", "week {w} update", "latest developments", "situation report {n}",
    "what changed", "morning briefing", "evening recap", "key takeaways",
]

PHASES_L = [
    "entered day {n}", "reached a turning point", "shifted again", "escalated",
    "showed signs of easing", "drew national attention", "entered week {w}",
    "continued without resolution",
]


def main() -> None:
    rng = random.Random(20210711)
    docs = []
    minute_choices = [0, 10, 20, 30, 40, 50]
    for topic, spec in TOPICS.items():
        start = rng.randint(0, 6)
        span = 88 - start
        days = sorted(rng.sample(range(start, start + span), spec["count"]))
        for n, day in enumerate(days, start=1):
            subject = rng.choice(spec["subjects"])
            action = rng.choice(spec["actions"])
            object_ = rng.choice(spec["objects"])
            object2 = rng.choice([o for o in spec["objects"] if o != object_])
            phase = rng.choice(PHASES).format(n=n, w=1 + day // 7)
            phase_l = rng.choice(PHASES_L).format(n=n, w=1 + day // 7)
            headline = spec["headline"].format(
                phase=phase, subject=subject, action=action
            )
            body = spec["body"].format(
                phase_l=phase_l,
                subject=subject,
                action=action,
                object=object_,
                object2=object2,
            )
            month = 7 + (day // 31)
            dom = day % 31 + 1
            hour = rng.randint(6, 21)
            minute = rng.choice(minute_choices)
            docs.append(
                {
                    "id": f"{topic}-{n:03d}",
                    "timestamp": f"2021-{month:02d}-{dom:02d}T{hour:02d}:{minute:02d}:00Z",
                    "headline": headline,
                    "body": body,
                    "source": f"Belmar {rng.choice(['Ledger', 'Signal', 'Courier', 'Tribune'])}",
                    "entities": [{"surface": e} for e in spec["entities"]],
                }
            )
    assert len(docs) == 160, len(docs)
    docs.sort(key=lambda d: (d["timestamp"], d["id"]))
    OUT.parent.mkdir(parents=True, exist_ok=True)
    with open(OUT, "w", encoding="utf-8") as fh:
        for d in docs:
            fh.write(json.dumps(d, sort_keys=True) + "\n")
    print(f"wrote {len(docs)} documents to {OUT}")


if __name__ == "__main__":
    main()
