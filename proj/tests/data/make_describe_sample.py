#!/usr/bin/env python3
"""Writes describe_sample.nt: 1,000 distinct DBpedia-style triples in N-Triples,
covering escapes, language tags, datatypes, blank nodes and raw UTF-8."""
import os
import random

DBR = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
XSD = "http://www.w3.org/2001/XMLSchema#"
RDFS = "http://www.w3.org/2000/01/rdf-schema#"

SUBJECTS = ["Pablo_Picasso", "Museum", "Opera", "Zürich", "São_Paulo", "Café",
            "Beer", "New_York_City", "Poetry", "Football", "Tōkyō", "Dog"]
LINKS = ["Art", "Spain", "Cubism", "Paris", "Music", "Theatre", "Culture", "Sport",
         "Food", "Animal", "Germany", "Japan", "Brazil", "Europe"]
LANGS = ["en", "de", "fr", "es", "ja", "pt-BR", "zh-Hans"]
WORDS = ["the", "art", "museum", "été", "naïve", "東京", "straße",
         "quote\"d", "back\\slash", "tab\there", "new\nline", "smile \U0001F600"]


def esc(s):
    out = []
    for ch in s:
        if ch == "\\":
            out.append("\\\\")
        elif ch == '"':
            out.append('\\"')
        elif ch == "\n":
            out.append("\\n")
        elif ch == "\t":
            out.append("\\t")
        elif ch == "\r":
            out.append("\\r")
        else:
            out.append(ch)
    return "".join(out)


def iri(s, rng):
    # Some IRIs spell non-ASCII characters with \u escapes.
    if rng.random() < 0.3 and any(ord(c) > 127 for c in s):
        return "<" + "".join(c if ord(c) < 128 else "\\u%04X" % ord(c) for c in s) + ">"
    return "<" + s + ">"


def literal(rng):
    kind = rng.randrange(6)
    text = " ".join(rng.choice(WORDS) for _ in range(rng.randint(1, 4)))
    if kind == 0:
        return '"%s"@%s' % (esc(text), rng.choice(LANGS))
    if kind == 1:
        return '"%d"^^<%sinteger>' % (rng.randint(-5000, 5000), XSD)
    if kind == 2:
        return '"%.4f"^^<%sdouble>' % (rng.uniform(-90, 90), XSD)
    if kind == 3:
        return '"%04d-%02d-%02d"^^<%sdate>' % (rng.randint(1800, 2020), rng.randint(1, 12),
                                                 rng.randint(1, 28), XSD)
    if kind == 4:
        # \u escape inside a literal
        return '"caf\\u00E9 %s"' % esc(text)
    return '"%s"' % esc(text)


def main():
    rng = random.Random(1234)
    lines = ["# DESCRIBE sample, one triple per line", ""]
    seen = set()
    count = 0
    while count < 1000:
        s = DBR + rng.choice(SUBJECTS)
        r = rng.random()
        if r < 0.45:
            o = DBR + rng.choice(LINKS)
            key = (s, "link", o)
            line = "%s <%swikiPageWikiLink> %s ." % (iri(s, rng), DBO, iri(o, rng))
        elif r < 0.8:
            pred = rng.choice([RDFS + "label", DBO + "abstract", DBO + "populationTotal",
                               DBO + "birthDate", DBO + "elevation"])
            o = literal(rng)
            key = (s, pred, o)
            line = "%s <%s> %s ." % (iri(s, rng), pred, o)
        elif r < 0.9:
            b = rng.randrange(20)
            key = (b, "influenced", s)
            line = "_:b%d <%sinfluenced> %s ." % (b, DBO, iri(s, rng))
        else:
            b = rng.randrange(20)
            key = (s, "hasPart", b)
            line = "%s <%shasPart> _:b%d ." % (iri(s, rng), DBO, b)
        # Keys hold decoded IRIs, so escaped spellings of one triple collide.
        if key in seen:
            continue
        seen.add(key)
        if rng.random() < 0.05:
            line = "  " + line.replace(" ", "\t", 1)
        if rng.random() < 0.03:
            line += " # trailing comment"
        lines.append(line)
        count += 1
        if rng.random() < 0.02:
            lines.append("")
    path = os.path.join(os.path.dirname(os.path.abspath(__file__)), "describe_sample.nt")
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


if __name__ == "__main__":
    main()
