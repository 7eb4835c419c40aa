#!/usr/bin/env python3
# Copyright 2026 The supkit Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Regenerates policy.json: a controller/environment DTMC for a welding
workcell shared by a robot and a human operator.

When some risk factor has to change phase, the controller moves
(probability 1); otherwise the environment moves one monitored variable
uniformly at random.
"""

import json
from pathlib import Path

LOCS = ["atTable", "sharedTbl", "atWeldSpot"]
PHASES = ["0", "a", "m"]

INTERFACE = {
    "sorts": [
        {"name": "Loc", "values": LOCS},
        {"name": "Dist", "values": ["far", "near"]},
        {"name": "Phase", "values": PHASES},
        {"name": "SafMod", "values": ["normal", "ssmon", "stopped"]},
        {"name": "Notif", "values": ["off", "on"]},
    ],
    "vars": [
        {"name": "rloc", "sort": "Loc", "kind": "I"},
        {"name": "hloc", "sort": "Loc", "kind": "I"},
        {"name": "rngDet", "sort": "Dist", "kind": "I"},
        {"name": "safmod", "sort": "SafMod", "kind": "O"},
        {"name": "notif", "sort": "Notif", "kind": "O"},
        {"name": "HS", "sort": "Phase", "kind": "F"},
        {"name": "HC", "sort": "Phase", "kind": "F"},
        {"name": "HRW", "sort": "Phase", "kind": "F"},
    ],
}

FACTORS = ["HS", "HC", "HRW"]

# Hazard present, per factor, given the monitored inputs.
CONDITIONS = {
    "HS": lambda i: i["hloc"] == "atWeldSpot" and i["rloc"] == "atWeldSpot",
    "HC": lambda i: i["rngDet"] == "near" and i["hloc"] == i["rloc"],
    "HRW": lambda i: i["hloc"] == "sharedTbl" and i["rloc"] == "sharedTbl",
}


def next_phase(phase, present):
    if phase == "0":
        return "a" if present else "0"
    if phase == "a":
        return "m"
    return "m" if present else "0"


def outputs(f):
    if f["HS"] == "m":
        safmod = "stopped"
    elif f["HC"] == "m" or f["HRW"] == "m":
        safmod = "ssmon"
    else:
        safmod = "normal"
    notif = "off" if all(f[x] == "0" for x in FACTORS) else "on"
    return {"safmod": safmod, "notif": notif}


def total(i, f):
    s = dict(i)
    s.update(outputs(f))
    s.update(f)
    return s


def main():
    init_i = {"rloc": "atTable", "hloc": "sharedTbl", "rngDet": "far"}
    init_f = {x: "0" for x in FACTORS}
    initial = total(init_i, init_f)

    # Risk states closed under the controller's phase update.
    inputs = [{"rloc": r, "hloc": h, "rngDet": d} for r in LOCS for h in LOCS for d in ("far", "near")]
    risk = [init_f]
    for f in risk:
        for i in inputs:
            g = {x: next_phase(f[x], CONDITIONS[x](i)) for x in FACTORS}
            if g not in risk:
                risk.append(g)

    # The strategy is defined on every (risk state, input) pair, so every
    # such total state is listed, reachable or not.
    transitions = []
    states = [total(i, f) for f in risk for i in inputs]
    for s in states:
        i = {v: s[v] for v in ("rloc", "hloc", "rngDet")}
        f = {x: s[x] for x in FACTORS}
        g = {x: next_phase(f[x], CONDITIONS[x](i)) for x in FACTORS}
        if g != f:
            changed = "".join(x + g[x] for x in FACTORS if g[x] != f[x])
            transitions.append({"source": s, "target": total(i, g), "action": "mitigate_" + changed,
                                "prob": "1", "owner": "C"})
            continue
        succ = []
        for v, values in (("rloc", LOCS), ("hloc", LOCS), ("rngDet", ["far", "near"])):
            for value in values:
                if value != i[v]:
                    j = dict(i)
                    j[v] = value
                    succ.append((j, "move_%s_%s" % (v, value)))
        for j, action in succ:
            transitions.append({"source": s, "target": total(j, f), "action": action,
                                "prob": "1/%d" % len(succ), "owner": "E"})
    seen = states

    policy = {"interface": "interface.json", "initial": initial, "transitions": transitions}
    here = Path(__file__).resolve().parent
    (here / "interface.json").write_text(json.dumps(INTERFACE, indent=2) + "\n")
    (here / "policy.json").write_text(json.dumps(policy, indent=1) + "\n")
    print("%d states, %d transitions (%d controller)" % (
        len(seen), len(transitions), sum(t["owner"] == "C" for t in transitions)))


if __name__ == "__main__":
    main()
