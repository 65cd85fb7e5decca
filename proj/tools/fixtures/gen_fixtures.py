#!/usr/bin/env python3
"""Builds core/data/fixtures.jsonl.

Scenes are laid out from coordinates so the relation tables are consistent.
Every plan is executed by the small interpreter below and the answer it gives
is written into the record; the C++ loader re-executes the plans on load.

    python3 tools/fixtures/gen_fixtures.py [--out core/data/fixtures.jsonl]
"""

import argparse
import json
import random
import re
from pathlib import Path

COLORS = ["gray", "red", "blue", "green", "brown", "purple", "cyan", "yellow"]
SIZES = ["small", "large"]
MATERIALS = ["rubber", "metal"]
SHAPES = ["cube", "sphere", "cylinder"]
NUMBERS = ["one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten"]
SYNONYMS = {"tiny": "small", "big": "large", "matte": "rubber", "shiny": "metal",
            "metallic": "metal", "ball": "sphere", "block": "cube"}
REL_PHRASE = {"left": "on the left side of", "right": "on the right side of",
              "front": "in front of", "behind": "behind"}

# category -> {part: (min count, max count)}; the first part is always present
PTR_PARTS = {
    "chair": {"seat": (1, 1), "back": (1, 1), "leg": (3, 4), "leg bar": (1, 4),
              "arm vertical bar": (2, 4), "arm horizontal bar": (2, 2)},
    "table": {"top": (1, 1), "leg": (3, 4), "drawer": (1, 6), "door": (1, 2), "leg bar": (2, 8)},
    "bed": {"sleep area": (1, 1), "leg": (4, 4), "leg bar": (2, 8), "back": (1, 1)},
    "cart": {"body": (1, 1), "wheel": (2, 4), "door": (1, 2)},
    "refrigerator": {"body": (1, 1), "door": (1, 2), "drawer": (1, 3)},
}


class PlanFailure(Exception):
    pass


def canon(token):
    t = token.strip().lower()
    return SYNONYMS.get(t, t)


# --------------------------------------------------------------------------
# scenes

def relations_from_positions(xs, depths):
    n = len(xs)
    rel = {name: [[] for _ in range(n)] for name in ("left", "right", "front", "behind")}
    for i in range(n):
        for j in range(n):
            if i == j:
                continue
            rel["left" if xs[j] < xs[i] else "right"][i].append(j)
            rel["front" if depths[j] < depths[i] else "behind"][i].append(j)
    return rel


def ptr_scene(objects, xs, depths):
    """objects: list of (category, {part: [color, count]})."""
    counters, entries = {}, []
    for category, parts in objects:
        k = counters.get(category, 0)
        counters[category] = k + 1
        entries.append({category.capitalize() + str(k): {p: list(v) for p, v in parts.items()}})
    rel = relations_from_positions(xs, depths)
    rel["above"] = [[] for _ in objects]
    rel["below"] = [[] for _ in objects]
    return {"relationships": rel, "objects": entries}


def clevr_scene(objects, xs, depths):
    """objects: list of (shape, color, size, material)."""
    counters, entries = {}, []
    for shape, color, size, material in objects:
        k = counters.get(shape, 0)
        counters[shape] = k + 1
        entries.append({shape + str(k): [color, size, material]})
    return {"relationships": relations_from_positions(xs, depths), "objects": entries}


def random_ptr_object(rng, category=None):
    category = category or rng.choice(sorted(PTR_PARTS))
    spec = PTR_PARTS[category]
    names = list(spec)
    parts = {}
    for i, name in enumerate(names):
        if i == 0 or rng.random() < 0.6:
            lo, hi = spec[name]
            parts[name] = [rng.choice(COLORS), rng.randint(lo, hi)]
    return category, parts


def random_clevr_object(rng, taken):
    while True:
        o = (rng.choice(SHAPES), rng.choice(COLORS), rng.choice(SIZES), rng.choice(MATERIALS))
        if o not in taken:
            taken.add(o)
            return o


def shuffled_positions(rng, n):
    xs, ds = list(range(n)), list(range(n))
    rng.shuffle(xs)
    rng.shuffle(ds)
    return xs, ds


# --------------------------------------------------------------------------
# mini interpreter

STEP_RE = re.compile(r'^\s*Step\s*(\d+)\s*:\s*([A-Za-z_]\w*)\s*=\s*([A-Za-z_]\w*)\s*\((.*)\)\s*$')


def split_args(text):
    out, depth, quote, cur = [], 0, False, ""
    for ch in text:
        if ch == '"':
            quote = not quote
        if not quote and ch == "[":
            depth += 1
        if not quote and ch == "]":
            depth -= 1
        if ch == "," and depth == 0 and not quote:
            out.append(cur.strip())
            cur = ""
        else:
            cur += ch
    if cur.strip():
        out.append(cur.strip())
    return out


class Scene:
    def __init__(self, doc):
        self.doc = doc
        self.rel = doc["relationships"]
        self.objects = []
        for entry in doc["objects"]:
            (name, body), = entry.items()
            category = re.sub(r"\d+$", "", name).lower()
            if isinstance(body, dict):
                self.objects.append({"category": category, "parts": {k: tuple(v) for k, v in body.items()}})
            else:
                self.objects.append({"category": category, "attrs": tuple(body)})
        self.part_based = "parts" in self.objects[0]


def classify(tokens):
    slots = {}
    for t in tokens:
        if isinstance(t, int):
            slot, value = "number", t
        else:
            c = canon(t)
            if c in NUMBERS:
                slot, value = "number", NUMBERS.index(c) + 1
            elif c in COLORS:
                slot, value = "color", c
            elif c in SIZES:
                slot, value = "size", c
            elif c in MATERIALS:
                slot, value = "material", c
            else:
                slot, value = "name", c
        if slot in slots:
            raise PlanFailure("descriptor slot used twice")
        slots[slot] = value
    return slots


def matches(scene, obj, d):
    if scene.part_based:
        if "size" in d or "material" in d:
            return False

        def part_ok(color, count):
            return d.get("color", color) == color and d.get("number", count) == count
        if "name" in d:
            p = obj["parts"].get(d["name"])
            return p is not None and part_ok(*p)
        return any(part_ok(*p) for p in obj["parts"].values())
    color, size, material = obj["attrs"]
    if "number" in d:
        return False
    return (d.get("color", color) == color and d.get("size", size) == size
            and d.get("material", material) == material and d.get("name", obj["category"]) == obj["category"])


def single(v):
    if len(v) != 1:
        raise PlanFailure("expected one object, got %d" % len(v))
    return v[0]


def check_vocabulary(scene, fn, raw_args):
    """Literal arguments must name things the scene actually has."""
    parts = {p for o in scene.objects for p in o.get("parts", {})}
    categories = {o["category"] for o in scene.objects}
    colors = {c for o in scene.objects for c, _ in o.get("parts", {}).values()}
    colors |= {o["attrs"][0] for o in scene.objects if "attrs" in o}
    max_count = max([n for o in scene.objects for _, n in o.get("parts", {}).values()] or [0])
    literals = [a[1:-1] for a in raw_args if a.startswith('"')]
    if fn in ("filter_object", "filter_category") and literals and canon(literals[0]) not in categories:
        raise PlanFailure("unknown category")
    if fn in ("count_part", "query_color") and len(raw_args) == 2 and literals and canon(literals[0]) not in parts:
        raise PlanFailure("unknown part")
    if fn == "query_part" and literals and canon(literals[0]) not in colors:
        raise PlanFailure("unknown color")
    if fn == "filter_part" and raw_args[0].startswith("["):
        for item in split_args(raw_args[0][1:-1]):
            if not item.startswith('"'):
                continue
            t = canon(item[1:-1])
            if t in NUMBERS:
                if NUMBERS.index(t) + 1 > max_count:
                    raise PlanFailure("count out of range")
            elif t in COLORS:
                if t not in colors:
                    raise PlanFailure("unknown color")
            elif t in SIZES or t in MATERIALS:
                pass
            elif t not in (parts if scene.part_based else categories):
                raise PlanFailure("unknown name " + t)


HARD_EMPTY = {"filter_object", "filter_part", "filter_category", "query_relation", "intersection"}


def run(plan, scene_doc):
    scene = Scene(scene_doc)
    env = {"all_obj": list(range(len(scene.objects)))}

    def value(arg):
        if arg.startswith('"'):
            return arg[1:-1]
        if arg.startswith("["):
            return [value(a) for a in split_args(arg[1:-1])]
        if arg not in env:
            raise PlanFailure("undefined " + arg)
        return env[arg]

    for line in plan:
        m = STEP_RE.match(line)
        if not m:
            raise PlanFailure("unparsable step " + line)
        _, target, fn, raw = m.groups()
        check_vocabulary(scene, fn, split_args(raw))
        args = [value(a) for a in split_args(raw)]
        objs = scene.objects
        if fn in ("filter_object", "filter_category"):
            out = [i for i in args[1] if objs[i]["category"] == canon(args[0])]
        elif fn == "filter_part":
            d = classify(args[0])
            out = [i for i in args[1] if matches(scene, objs[i], d)]
        elif fn == "exclude_object":
            out = [i for i in args[1] if i not in args[0]]
        elif fn == "intersection":
            out = [i for i in args[0] if i in args[1]]
        elif fn == "query_relation":
            out = list(scene.rel[args[0]][single(args[1])])
        elif fn == "get_relation":
            a, b = single(args[0]), single(args[1])
            if a == b:
                raise PlanFailure("same object")
            order = ["front", "behind", "left", "right", "above", "below"]
            out = [r for r in order if r in scene.rel and a in scene.rel[r][b]]
            if not out:
                raise PlanFailure("no relation")
        elif fn == "filter_relation":
            rels = args[0] if isinstance(args[0], list) else [args[0]]
            anchor = single(args[1])
            out = [y for y in args[2] if y != anchor and all(anchor in scene.rel[r][y] for r in rels)]
        elif fn == "query_category":
            out = objs[single(args[0])]["category"]
        elif fn == "query_part":
            parts = [p for p, (c, _) in objs[single(args[1])]["parts"].items() if c == canon(args[0])]
            if len(parts) != 1:
                raise PlanFailure("query_part needs exactly one matching part")
            out = parts[0]
        elif fn == "query_color":
            if len(args) == 2:
                part = objs[single(args[1])]["parts"].get(canon(args[0]))
                if part is None:
                    raise PlanFailure("no such part")
                out = part[0]
            else:
                out = objs[single(args[0])]["attrs"][0]
        elif fn == "query_size":
            out = objs[single(args[0])]["attrs"][1]
        elif fn == "count_part":
            out = objs[single(args[1])]["parts"].get(canon(args[0]), (None, 0))[1]
        elif fn == "count_object":
            out = len(args[0])
        elif fn == "sum":
            out = args[0] + args[1]
        elif fn == "equal":
            out = args[0] == args[1]
        elif fn == "more_than":
            out = args[0] > args[1]
        elif fn in ("few_than", "fewer_than"):
            out = args[0] < args[1]
        elif fn == "exist":
            out = len(args[0]) > 0
        else:
            raise PlanFailure("unknown tool " + fn)
        if fn in HARD_EMPTY and not out:
            raise PlanFailure(fn + " returned nothing")
        env[target] = out
        if target == "ans":
            if isinstance(out, bool):
                return "yes" if out else "no"
            if isinstance(out, int):
                return str(out)
            if isinstance(out, str):
                return out
            raise PlanFailure("unformattable answer")
    raise PlanFailure("plan never assigns ans")


# --------------------------------------------------------------------------
# descriptor helpers

def ptr_descriptor(scene_doc, target, pool, rng, allow_bare=True):
    """A descriptor list (as tokens) picking out `target` from `pool` in a part-based scene."""
    scene = Scene(scene_doc)
    parts = scene.objects[target]["parts"]
    options = []
    for part, (color, count) in parts.items():
        word = NUMBERS[count - 1]
        options += [[color, part], [word, color, part], [word, part]]
        if allow_bare:
            options.append([part])
    rng.shuffle(options)
    for tokens in options:
        d = classify(tokens)
        hits = [i for i in pool if matches(scene, scene.objects[i], d)]
        if hits == [target]:
            return tokens
    return None


def clevr_descriptor(scene_doc, target, pool, rng):
    scene = Scene(scene_doc)
    shape = scene.objects[target]["category"]
    color, size, material = scene.objects[target]["attrs"]
    tokens = [size, color, material, shape]
    subsets = []
    for mask in range(1, 16):
        subsets.append([tokens[b] for b in range(4) if mask >> b & 1])
    rng.shuffle(subsets)
    subsets.sort(key=len)
    for sub in subsets:
        d = classify(sub)
        hits = [i for i in pool if matches(scene, scene.objects[i], d)]
        if hits == [target]:
            return sub
    return None


def q(tokens):
    return "[" + ",".join('"%s"' % t for t in tokens) + "]"


def describe_parts(tokens):
    """["six","red","drawer"] -> "six red drawers"."""
    words = list(tokens)
    plural = words[0] in NUMBERS and words[0] != "one"
    if plural:
        words[-1] = words[-1] + "s"
    return " ".join(words)


def describe_clevr(tokens):
    shape = [t for t in tokens if t in SHAPES]
    rest = [t for t in tokens if t not in SHAPES]
    return " ".join(rest + (shape or ["thing"]))


def steps(*calls):
    return ["Step %d:%s = %s" % (i + 1, target, call) for i, (target, call) in enumerate(calls)]


# --------------------------------------------------------------------------
# generated variants, one builder per question type

def random_ptr(rng, n, categories=None):
    objects = [random_ptr_object(rng, c) for c in (categories or [])]
    while len(objects) < n:
        objects.append(random_ptr_object(rng))
    rng.shuffle(objects)
    xs, ds = shuffled_positions(rng, n)
    return ptr_scene(objects, xs, ds)


def random_clevr(rng, n):
    taken = set()
    objects = [random_clevr_object(rng, taken) for _ in range(n)]
    xs, ds = shuffled_positions(rng, n)
    return clevr_scene(objects, xs, ds)


def indices_of(scene_doc, category):
    return [i for i, o in enumerate(Scene(scene_doc).objects) if o["category"] == category]


def gen_short_rel(rng):
    scene = random_ptr(rng, rng.randint(4, 6))
    s = Scene(scene)
    target = rng.randrange(len(s.objects))
    cat = s.objects[target]["category"]
    d = ptr_descriptor(scene, target, indices_of(scene, cat), rng)
    rel = rng.choice(sorted(REL_PHRASE))
    if d is None:
        return None
    tail = rng.choice(["count", "exist"])
    plan = steps(("obj1", 'filter_object("%s",all_obj)' % cat),
                 ("obj2", "filter_part(%s,obj1)" % q(d)),
                 ("obj3", 'query_relation("%s",obj2)' % rel),
                 ("ans", "count_object(obj3)" if tail == "count" else "exist(obj3)"))
    lead = "how many things are" if tail == "count" else "is there anything"
    question = "%s %s the %s with %s?" % (lead, REL_PHRASE[rel], cat, describe_parts(d))
    return question, plan, scene


def gen_long_rel(rng):
    scene = random_clevr(rng, rng.randint(6, 8))
    n = len(Scene(scene).objects)
    current = rng.randrange(n)
    d = clevr_descriptor(scene, current, list(range(n)), rng)
    calls = [("obj1", "filter_part(%s,all_obj)" % q(d))]
    phrase = "the " + describe_clevr(d)
    hops = rng.choice([2, 3])
    for _ in range(hops):
        rel = rng.choice(sorted(REL_PHRASE))
        pool = scene["relationships"][rel][current]
        if len(pool) < 2:
            return None
        calls.append(("obj%d" % (len(calls) + 1), 'query_relation("%s",obj%d)' % (rel, len(calls))))
        current = rng.choice(pool)
        d = clevr_descriptor(scene, current, pool, rng)
        calls.append(("obj%d" % (len(calls) + 1), "filter_part(%s,obj%d)" % (q(d), len(calls))))
        phrase = "the %s %s %s" % (describe_clevr(d), REL_PHRASE[rel], phrase)
    if rng.random() < 0.5:
        calls.append(("ans", "query_size(obj%d)" % len(calls)))
        question = "What size is %s?" % phrase
    else:
        calls.append(("ans", "query_color(obj%d)" % len(calls)))
        question = "What color is %s?" % phrase
    return question, steps(*calls), scene


def pick_with_part(rng, scene, pool_filter=None):
    s = Scene(scene)
    choices = [i for i in range(len(s.objects)) if pool_filter is None or pool_filter(s.objects[i])]
    return rng.choice(choices) if choices else None


def gen_sum(rng):
    scene = random_ptr(rng, rng.randint(4, 6), ["table", "table"])
    s = Scene(scene)
    picks = []
    for _ in range(2):
        target = rng.randrange(len(s.objects))
        cat = s.objects[target]["category"]
        d = ptr_descriptor(scene, target, indices_of(scene, cat), rng, allow_bare=False)
        if d is None:
            return None
        counted = rng.choice(sorted(set(PTR_PARTS[cat])))
        picks.append((cat, d, counted))
    (c1, d1, p1), (c2, d2, p2) = picks
    plan = steps(("obj1", 'filter_object("%s",all_obj)' % c1),
                 ("obj2", "filter_part(%s,obj1)" % q(d1)),
                 ("num1", 'count_part("%s",obj2)' % p1),
                 ("obj3", 'filter_object("%s",all_obj)' % c2),
                 ("obj4", "filter_part(%s,obj3)" % q(d2)),
                 ("num2", 'count_part("%s",obj4)' % p2),
                 ("ans", "sum(num1,num2)"))
    question = ("what is the sum of the number of %ss in the %s with %s, and the number of %ss in the %s with %s?"
                % (p1, c1, describe_parts(d1), p2, c2, describe_parts(d2)))
    return question, plan, scene


def gen_compare(rng):
    scene = random_ptr(rng, rng.randint(4, 6), ["cart"])
    s = Scene(scene)
    a = rng.randrange(len(s.objects))
    ca = s.objects[a]["category"]
    da = ptr_descriptor(scene, a, indices_of(scene, ca), rng, allow_bare=False)
    b = rng.randrange(len(s.objects))
    db = ptr_descriptor(scene, b, list(range(len(s.objects))), rng, allow_bare=False)
    if da is None or db is None:
        return None
    pa = rng.choice(sorted(s.objects[a]["parts"]))
    pb = rng.choice(sorted(s.objects[b]["parts"]))
    tool, phrase = rng.choice([("equal", "an equal number of"), ("more_than", "more"), ("few_than", "fewer")])
    plan = steps(("obj1", 'filter_object("%s",all_obj)' % ca),
                 ("obj2", "filter_part(%s,obj1)" % q(da)),
                 ("num1", 'count_part("%s",obj2)' % pa),
                 ("obj3", "filter_part(%s,all_obj)" % q(db)),
                 ("num2", 'count_part("%s",obj3)' % pb),
                 ("ans", "%s(num1,num2)" % tool))
    question = ("are there %s %ss in the %s with %s as %ss in the thing with %s?"
                % (phrase, pa, ca, describe_parts(da), pb, describe_parts(db)))
    return question, plan, scene


def gen_logic(rng):
    scene = random_clevr(rng, rng.randint(6, 8))
    n = len(Scene(scene).objects)
    a, b = rng.sample(range(n), 2)
    da = clevr_descriptor(scene, a, list(range(n)), rng)
    db = clevr_descriptor(scene, b, list(range(n)), rng)
    ra, rb = rng.choice(["left", "right"]), rng.choice(["front", "behind"])
    rel = scene["relationships"]
    both = [i for i in rel[ra][a] if i in rel[rb][b]]
    if not both:
        return None
    target = rng.choice(both)
    dt = clevr_descriptor(scene, target, both, rng)
    attr = rng.choice(["color", "size"])
    plan = steps(("obj1", "filter_part(%s,all_obj)" % q(da)),
                 ("obj2", 'query_relation("%s",obj1)' % ra),
                 ("obj3", "filter_part(%s,all_obj)" % q(db)),
                 ("obj4", 'query_relation("%s",obj3)' % rb),
                 ("obj5", "intersection(obj2,obj4)"),
                 ("obj6", "filter_part(%s,obj5)" % q(dt)),
                 ("ans", "query_%s(obj6)" % attr))
    question = ("The %s that is both %s the %s and %s the %s is what %s?"
                % (describe_clevr(dt), REL_PHRASE[ra], describe_clevr(da), REL_PHRASE[rb], describe_clevr(db), attr))
    return question, plan, scene


def gen_query_part(rng):
    cat = rng.choice(sorted(PTR_PARTS))
    scene = random_ptr(rng, rng.randint(4, 6), [cat, cat])
    members = indices_of(scene, cat)
    if len(members) != 2:
        return None
    s = Scene(scene)
    a, b = rng.sample(members, 2)
    d = ptr_descriptor(scene, a, list(range(len(s.objects))), rng, allow_bare=False)
    colors = [c for c, _ in s.objects[b]["parts"].values()]
    unique = [c for c in colors if colors.count(c) == 1]
    if d is None or not unique:
        return None
    color = rng.choice(unique)
    plan = steps(("obj1", "filter_part(%s,all_obj)" % q(d)),
                 ("category1", "query_category(obj1)"),
                 ("obj2", "filter_category(category1,all_obj)"),
                 ("obj3", "exclude_object(obj1,obj2)"),
                 ("ans", 'query_part("%s",obj3)' % color))
    question = ("what is the category of the %s part of the thing that is of the same category as the thing with %s?"
                % (color, describe_parts(d)))
    return question, plan, scene


def gen_exist(rng):
    scene = random_ptr(rng, rng.randint(4, 6))
    s = Scene(scene)
    a = rng.randrange(len(s.objects))
    cat = s.objects[a]["category"]
    d = ptr_descriptor(scene, a, indices_of(scene, cat), rng, allow_bare=False)
    part = rng.choice(sorted(s.objects[a]["parts"]))
    if d is None:
        return None
    plan = steps(("obj1", 'filter_object("%s",all_obj)' % cat),
                 ("obj2", "filter_part(%s,obj1)" % q(d)),
                 ("num1", 'count_part("%s",obj2)' % part),
                 ("obj3", 'filter_part([num1,"%s"],all_obj)' % part),
                 ("obj4", "exclude_object(obj2,obj3)"),
                 ("ans", "exist(obj4)"))
    question = ("are there any objects that have the same number of %ss as the %s with %s?"
                % (part, cat, describe_parts(d)))
    return question, plan, scene


def gen_count(rng):
    scene = random_ptr(rng, rng.randint(4, 6))
    s = Scene(scene)
    a = rng.randrange(len(s.objects))
    cat = s.objects[a]["category"]
    d = ptr_descriptor(scene, a, indices_of(scene, cat), rng, allow_bare=False)
    part = rng.choice(sorted(s.objects[a]["parts"]))
    counted = rng.choice(["leg", "leg bar", "door", "drawer", "wheel"])
    if d is None:
        return None
    plan = steps(("obj1", 'filter_object("%s",all_obj)' % cat),
                 ("obj2", "filter_part(%s,obj1)" % q(d)),
                 ("color1", 'query_color("%s",obj2)' % part),
                 ("obj3", 'filter_part([color1,"%s"],all_obj)' % part),
                 ("obj4", "exclude_object(obj2,obj3)"),
                 ("ans", 'count_part("%s",obj4)' % counted))
    question = ("what is the number of the %ss of the thing that has the same color of %s as the %s with %s?"
                % (counted, part, cat, describe_parts(d)))
    return question, plan, scene


def gen_analogy(rng):
    scene = random_ptr(rng, rng.randint(4, 6))
    s = Scene(scene)
    n = len(s.objects)
    a, b, c = rng.sample(range(n), 3)
    da = ptr_descriptor(scene, a, list(range(n)), rng, allow_bare=False)
    db = ptr_descriptor(scene, b, list(range(n)), rng, allow_bare=False)
    dc = ptr_descriptor(scene, c, list(range(n)), rng, allow_bare=False)
    if None in (da, db, dc):
        return None
    tail = rng.choice(["count", "exist", "category"])
    calls = [("obj1", "filter_part(%s,all_obj)" % q(da)),
             ("obj2", "filter_part(%s,all_obj)" % q(db)),
             ("relation1", "get_relation(obj1,obj2)"),
             ("obj3", "filter_part(%s,all_obj)" % q(dc)),
             ("obj4", "filter_relation(relation1,obj3,all_obj)")]
    lead = ("the thing with %s has certain positional relation to the thing with %s. by analogy, "
            % (describe_parts(da), describe_parts(db)))
    if tail == "count":
        calls.append(("ans", "count_object(obj4)"))
        question = lead + "how many objects does the thing with %s have the same positional relation to?" % describe_parts(dc)
    elif tail == "exist":
        calls.append(("ans", "exist(obj4)"))
        question = lead + "is there an object that the thing with %s has the same positional relation to?" % describe_parts(dc)
    else:
        calls.append(("ans", "query_category(obj4)"))
        question = lead + "the thing with %s has the same positional relation to an object of what category?" % describe_parts(dc)
    return question, steps(*calls), scene


GENERATORS = {
    ("Short Rel", "Sequence"): gen_short_rel,
    ("Long Rel", "Sequence"): gen_long_rel,
    ("Sum", "Parallel"): gen_sum,
    ("Compare", "Parallel"): gen_compare,
    ("Logic", "Parallel"): gen_logic,
    ("Query Part", "Backtrack"): gen_query_part,
    ("Exist", "Backtrack"): gen_exist,
    ("Count", "Backtrack"): gen_count,
    ("Analogy", "Multi-Backtrack"): gen_analogy,
}


# --------------------------------------------------------------------------
# worked-example plans on planted scenes

def plant(rng, planted, fillers, check):
    """Random filler objects around fixed ones until `check(scene)` holds."""
    for _ in range(5000):
        objects = list(planted) + [random_ptr_object(rng) for _ in range(fillers)]
        rng.shuffle(objects)
        xs, ds = shuffled_positions(rng, len(objects))
        scene = ptr_scene(objects, xs, ds)
        if check(scene):
            return scene
    raise SystemExit("could not plant a scene")


def runs(plan):
    def check(scene):
        try:
            run(plan, scene)
            return True
        except PlanFailure:
            return False
    return check


WORKED = [
    ("app-short-rel", "Short Rel", "Sequence",
     "how many things are behind the table with six red drawers?",
     ['Step 1:obj1 = filter_object("table",all_obj)',
      'Step 2:obj2 = filter_part(["six","red","drawer"],obj1)',
      'Step 3:obj3 = query_relation("behind",obj2)',
      'Step 4:ans = count_object(obj3)'],
     [("table", {"top": ["brown", 1], "leg": ["gray", 4], "drawer": ["red", 6]})], 3),
    ("app-sum", "Sum", "Parallel",
     "what is the sum of the number of drawers in the table with cyan legs, and the number of doors in the table with two blue legs?",
     ['Step 1:obj1 = filter_object("table",all_obj)',
      'Step 2:obj2 = filter_part(["cyan", "leg"],obj1)',
      'Step 3:num1 = count_part("drawer",obj2)',
      'Step 4:obj3 = filter_object("table",all_obj)',
      'Step 5:obj4 = filter_part(["two","blue","leg"],obj3)',
      'Step 6:num2 = count_part("door",obj4)',
      'Step 7:ans = sum(num1,num2)'],
     [("table", {"top": ["yellow", 1], "leg": ["cyan", 4], "drawer": ["green", 3]}),
      ("table", {"top": ["gray", 1], "leg": ["blue", 2], "door": ["purple", 2]})], 2),
    ("app-compare", "Compare", "Parallel",
     "are there an equal number of legs in the object with three red leg bars, and wheels in the cart with a cyan body?",
     ['Step 1:obj1 = filter_object("cart",all_obj)',
      'Step 2:obj2 = filter_part(["one","cyan","body"],obj1)',
      'Step 3:num1 = count_part("wheel",obj2)',
      'Step 4:obj3 = filter_part(["red","leg bar"],all_obj)',
      'Step 5:num2 = count_part("leg",obj3)',
      'Step 6:ans = equal(num1,num2)'],
     [("cart", {"body": ["cyan", 1], "wheel": ["gray", 4]}),
      ("chair", {"seat": ["blue", 1], "leg": ["brown", 4], "leg bar": ["red", 3]})], 3),
    ("app-query-part", "Query Part", "Backtrack",
     "what is the category of the brown part of the thing that is of the same category as the thing with blue legs?",
     ['Step 1:obj1 = filter_part(["blue","leg"],all_obj)',
      'Step 2:category1 = query_category(obj1)',
      'Step 3:obj2 = filter_category(category1,all_obj)',
      'Step 4:obj3 = exclude_object(obj1,obj2)',
      'Step 5:ans= query_part("brown",obj3)'],
     [("chair", {"seat": ["gray", 1], "leg": ["blue", 4], "back": ["green", 1]}),
      ("chair", {"seat": ["brown", 1], "leg": ["yellow", 4], "back": ["cyan", 1]})], 2),
    ("app-exist", "Exist", "Backtrack",
     "are there any objects that have the same number of leg bars as the chair with one red back?",
     ['Step 1:obj1 = filter_object("chair",all_obj)',
      'Step 2:obj2 = filter_part(["one","red","back"],obj1)',
      'Step 3:num1 = count_part("leg bar",obj2)',
      'Step 4:obj3 = filter_part([num1,"leg bar"],all_obj)',
      'Step 5:obj4 = exclude_object(obj2,obj3)',
      'Step 6:ans = exist(obj4)'],
     [("chair", {"seat": ["gray", 1], "back": ["red", 1], "leg bar": ["green", 2]}),
      ("table", {"top": ["purple", 1], "leg bar": ["blue", 2]})], 2),
    ("app-count", "Count", "Backtrack",
     "what is the number of the legs of the thing that has the same color of seat as the chair with three leg bars?",
     ['Step 1:obj1 = filter_object("chair",all_obj)',
      'Step 2:obj2 = filter_part(["three","leg bar"],obj1)',
      'Step 3:color1 = query_color("seat",obj2)',
      'Step 4:obj3 = filter_part([color1,"seat"],all_obj)',
      'Step 5:obj4 = exclude_object(obj2,obj3)',
      'Step 6:ans = count_part("leg",obj4)'],
     [("chair", {"seat": ["purple", 1], "leg bar": ["gray", 3], "leg": ["gray", 4]}),
      ("chair", {"seat": ["purple", 1], "leg": ["red", 3], "back": ["blue", 1]})], 2),
    ("app-analogy-beds", "Analogy", "Multi-Backtrack",
     "the bed with a purple sleep area has certain positional relation to the bed with one green sleep area. by analogy, how many objects does the object with eight leg bars have the same positional relation to?",
     ['Step 1:obj1 = filter_object("bed",all_obj)',
      'Step 2:obj2 = filter_part(["one","purple","sleep area"],obj1)',
      'Step 3:obj3 = filter_object("bed",all_obj)',
      'Step 4:obj4 = filter_part(["one","green","sleep area"],obj3)',
      'Step 5:relation1 = get_relation(obj2,obj4)',
      'Step 6:obj5 = filter_part(["eight","leg bar"],all_obj)',
      'Step 7:obj6= filter_relation(relation1,obj5,all_obj)',
      'Step 8:ans = count_object(obj6)'],
     [("bed", {"sleep area": ["purple", 1], "leg": ["brown", 4]}),
      ("bed", {"sleep area": ["green", 1], "leg": ["gray", 4]}),
      ("table", {"top": ["red", 1], "leg bar": ["yellow", 8]})], 3),
]

# The remaining Analogy examples from the prompt listing; they form the Analogy library.
PROMPT_ANALOGY = [
    ("lib-analogy-table-cart",
     "the table with purple top has certain positional relation to the table with doors. by analogy, is there an object that cart with three wheels has the same positional relation to?",
     ['Step 1:obj1 = filter_object("table",all_obj)',
      'Step 2:obj2 = filter_part(["purple","top"],obj1)',
      'Step 3:obj3 = filter_object("table",all_obj)',
      'Step 4:obj4 = filter_part(["door"],obj3)',
      'Step 5:relation1 = get_relation(obj2,obj4)',
      'Step 6:obj5 = filter_object("cart",all_obj)',
      'Step 7:obj6 = filter_part(["three","wheel"],obj5)',
      'Step 8:obj7= filter_relation(relation1,obj6,all_obj)',
      'Step 9:ans = exist(obj7)'],
     [("table", {"top": ["purple", 1], "leg": ["gray", 4]}),
      ("table", {"top": ["cyan", 1], "door": ["red", 2]}),
      ("cart", {"body": ["blue", 1], "wheel": ["gray", 3]})], 2),
    ("lib-analogy-leg-bars",
     "the thing with two green leg bars has certain positional relation to the object with four brown legs. by analogy, the chair with gray legs has the same positional relation to an object of what category?",
     ['Step 1:obj1 = filter_part(["two","green","leg bar"],all_obj)',
      'Step 2:obj2 = filter_part(["four","brown","leg"],all_obj)',
      'Step 3:relation1 = get_relation(obj1,obj2)',
      'Step 4:obj3 = filter_object("chair",all_obj)',
      'Step 5:obj4 = filter_part(["gray","leg"],obj3)',
      'Step 6:obj5= filter_relation(relation1,obj4,all_obj)',
      'Step 7:ans = query_category(obj5)'],
     [("chair", {"seat": ["red", 1], "leg bar": ["green", 2]}),
      ("table", {"top": ["blue", 1], "leg": ["brown", 4]}),
      ("chair", {"seat": ["yellow", 1], "leg": ["gray", 4]})], 1),
    ("lib-analogy-arm-bars",
     "the chair with arm horizontal bars has certain positional relation to the chair with blue seat. by analogy, is there an object that chair with red back has the same positional relation to?",
     ['Step 1:obj1 = filter_object("chair",all_obj)',
      'Step 2:obj2 = filter_part(["arm horizontal bar"],obj1)',
      'Step 3:obj3 = filter_object("chair",all_obj)',
      'Step 4:obj4 = filter_part(["blue","seat"],obj3)',
      'Step 5:relation1 = get_relation(obj2,obj4)',
      'Step 6:obj5 = filter_object("chair",all_obj)',
      'Step 7:obj6 = filter_part(["red","back"],obj5)',
      'Step 8:obj7= filter_relation(relation1,obj6,all_obj)',
      'Step 9:ans = exist(obj7)'],
     [("chair", {"seat": ["gray", 1], "arm horizontal bar": ["brown", 2]}),
      ("chair", {"seat": ["blue", 1], "leg": ["gray", 4]}),
      ("chair", {"seat": ["green", 1], "back": ["red", 1]})], 2),
]

PTR_WORKED_SCENE = {
    "relationships": {
        "above": [[], [], []], "behind": [[], [0], [0, 1]], "below": [[], [], []],
        "front": [[1, 2], [2], []], "left": [[1, 2], [], [1]], "right": [[], [0, 2], [0]]},
    "objects": [
        {"Chair0": {"back": ["cyan", 1], "leg": ["gray", 4], "seat": ["gray", 1]}},
        {"Table0": {"door": ["purple", 1], "leg": ["blue", 3], "top": ["yellow", 1]}},
        {"Chair1": {"arm horizontal bar": ["green", 2], "arm vertical bar": ["brown", 4], "back": ["brown", 1],
                    "leg": ["cyan", 4], "leg bar": ["green", 2], "seat": ["brown", 1]}}]}

CLEVR_WORKED_SCENE = {
    "relationships": {
        "right": [[1, 2, 4, 7], [2, 7], [], [0, 1, 2, 4, 7], [1, 2, 7], [0, 1, 2, 3, 4, 6, 7], [0, 1, 2, 3, 4, 7], [2]],
        "behind": [[1, 2, 3, 4, 5, 6, 7], [4, 7], [1, 4, 7], [1, 2, 4, 7], [], [1, 2, 3, 4, 7], [1, 2, 3, 4, 5, 7], [4]],
        "front": [[], [0, 2, 3, 5, 6], [0, 3, 5, 6], [0, 5, 6], [0, 1, 2, 3, 5, 6, 7], [0, 6], [0], [0, 1, 2, 3, 5, 6]],
        "left": [[3, 5, 6], [0, 3, 4, 5, 6], [0, 1, 3, 4, 5, 6, 7], [5, 6], [0, 3, 5, 6], [], [5], [0, 1, 3, 4, 5, 6]]},
    "objects": [
        {"cube0": ["gray", "large", "rubber"]}, {"sphere0": ["brown", "small", "metal"]},
        {"cube1": ["blue", "large", "rubber"]}, {"cylinder0": ["brown", "large", "rubber"]},
        {"cube2": ["purple", "small", "metal"]}, {"sphere1": ["gray", "small", "metal"]},
        {"cube3": ["gray", "small", "rubber"]}, {"cube4": ["blue", "small", "metal"]}]}

DERIVED = [
    ("ptr-worked-analogy", "Analogy", "Multi-Backtrack",
     "the chair with four brown arm vertical bars has certain positional relation to the chair with gray legs. by analogy, the thing with three blue legs has the same positional relation to an object of what category?",
     "Chair",
     ['Step 1:obj1 = filter_object("chair",all_obj)',
      'Step 2:obj2 = filter_part(["four","brown","arm vertical bar"],obj1)',
      'Step 3:obj3 = filter_object("chair",all_obj)',
      'Step 4:obj4 = filter_part(["gray","leg"],obj3)',
      'Step 5:relation1 = get_relation(obj2,obj4)',
      'Step 6:obj5 = filter_part(["three","blue","leg"],all_obj)',
      'Step 7:obj6 = filter_relation(relation1,obj5,all_obj)',
      'Step 8:ans = query_category(obj6)'],
     PTR_WORKED_SCENE),
    ("clevr-worked-logic", "Logic", "Parallel",
     "The large thing that is both on the left side of the purple shiny object and behind the tiny gray metallic ball is what color?",
     "brown",
     ['Step 1:obj1 = filter_part(["purple","shiny"],all_obj)',
      'Step 2:obj2 = query_relation("left",obj1)',
      'Step 3:obj3 = filter_part(["tiny","gray","metallic","ball"],all_obj)',
      'Step 4:obj4 = query_relation("behind",obj3)',
      'Step 5:obj5 = intersection(obj2,obj4)',
      'Step 6:obj6 = filter_part(["large"],obj5)',
      'Step 7:ans = query_color(obj6)'],
     CLEVR_WORKED_SCENE),
]

# Long Rel and Logic Both come from attribute-style scenes, laid out by hand.
LONG_REL_OBJECTS = [  # (shape, color, size, material, x, depth)
    ("cylinder", "green", "large", "rubber", 2, 10),
    ("cube", "yellow", "small", "rubber", 5, 9),
    ("sphere", "yellow", "large", "metal", 0, 8),
    ("sphere", "red", "small", "metal", 6, 3),
    ("cube", "blue", "large", "rubber", 8, 1),
    ("cylinder", "gray", "small", "metal", -2, 5),
]

LOGIC_OBJECTS = [
    ("cube", "red", "small", "rubber", 1, 5),
    ("cylinder", "green", "large", "metal", 5, 8),
    ("sphere", "blue", "small", "metal", 4, 2),
    ("cube", "yellow", "large", "rubber", 6, 4),
    ("sphere", "gray", "large", "rubber", 0, 1),
]


def laid_out(objects):
    return clevr_scene([o[:4] for o in objects], [o[4] for o in objects], [o[5] for o in objects])


WORKED_CLEVR = [
    ("app-long-rel", "Long Rel", "Sequence",
     "What size is the yellow ball behind the sphere that is on the right side of the object that is behind the tiny yellow matte thing?",
     ['Step 1:obj1 = filter_part(["tiny","yellow","matte"],all_obj)',
      'Step 2:obj2 = query_relation("behind",obj1)',
      'Step 3:obj3 = query_relation("right",obj2)',
      'Step 4:obj4 = filter_object("sphere",obj3)',
      'Step 5:obj5 = query_relation("behind",obj4)',
      'Step 6:obj6 = filter_object("ball",obj5)',
      'Step 7:obj7 = filter_part(["yellow"],obj6)',
      'Step 8:ans = query_size(obj7)'],
     LONG_REL_OBJECTS),
    ("app-logic", "Logic", "Parallel",
     "The metal object that is both on the right side of the small red thing and in front of the large green metal thing is what color?",
     ['Step 1:obj1 = filter_part(["small","red"],all_obj)',
      'Step 2:obj2 = query_relation("right",obj1)',
      'Step 3:obj3 = filter_part(["large","green","metal"],all_obj)',
      'Step 4:obj4 = query_relation("front",obj3)',
      'Step 5:obj5 = intersection(obj2,obj4)',
      'Step 6:obj6 = filter_part(["metal"],obj5)',
      'Step 7:ans = query_color(obj6)'],
     LOGIC_OBJECTS),
]


def record(rid, qtype, structure, question, plan, scene, split, answer=None):
    produced = run(plan, scene)
    if answer is not None and produced.lower() != answer.lower():
        raise SystemExit("%s: plan answers %r, expected %r" % (rid, produced, answer))
    return {"id": rid, "question": question, "answer": answer if answer is not None else produced,
            "question_type": qtype, "structure": structure, "gold_plan": plan, "scene": scene, "split": split}


def build(seed):
    rng = random.Random(seed)
    out = []
    for rid, qtype, structure, question, plan, planted, fillers in WORKED:
        out.append(record(rid, qtype, structure, question, plan, plant(rng, planted, fillers, runs(plan)), "library"))
    for rid, qtype, structure, question, plan, objects in WORKED_CLEVR:
        out.append(record(rid, qtype, structure, question, plan, laid_out(objects), "library"))
    for rid, question, plan, planted, fillers in PROMPT_ANALOGY:
        out.append(record(rid, "Analogy", "Multi-Backtrack", question, plan,
                          plant(rng, planted, fillers, runs(plan)), "library"))
    for rid, qtype, structure, question, answer, plan, scene in DERIVED:
        out.append(record(rid, qtype, structure, question, plan, scene, "test", answer))

    library_target, test_target = 4, 4
    for (qtype, structure), gen in GENERATORS.items():
        have = {"library": 0, "test": 0}
        for r in out:
            if r["question_type"] == qtype:
                have[r["split"]] += 1
        slug = qtype.lower().replace(" ", "-")
        k = 0
        for split, target in (("library", library_target), ("test", test_target)):
            while have[split] < target:
                made = gen(rng)
                if made is None:
                    continue
                question, plan, scene = made
                try:
                    out.append(record("%s-%s-%d" % (slug, split[:3], k), qtype, structure, question, plan, scene,
                                      split))
                except PlanFailure:
                    continue
                have[split] += 1
                k += 1
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--out", default=str(Path(__file__).resolve().parents[2] / "core" / "data" / "fixtures.jsonl"))
    ap.add_argument("--seed", type=int, default=20240517)
    args = ap.parse_args()
    records = build(args.seed)
    with open(args.out, "w") as f:
        for r in records:
            f.write(json.dumps(r, separators=(",", ":")) + "\n")
    print("wrote %d records to %s" % (len(records), args.out))


if __name__ == "__main__":
    main()
