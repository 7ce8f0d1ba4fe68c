#!/usr/bin/env python3
"""Regenerates data/toy: a 20-essay corpus whose Openness label is decided
by which concept cluster an essay draws from, plus a warm triple cache,
ontology, lexicon fixtures and a config for offline runs."""

import csv
import os
import random
import sys

ROOT = os.path.join(os.path.dirname(os.path.abspath(__file__)), "..", "data", "toy")

DBR = "http://dbpedia.org/resource/"
DBO = "http://dbpedia.org/ontology/"
RDF_TYPE = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type"
RDFS_LABEL = "http://www.w3.org/2000/01/rdf-schema#label"
SUBCLASS = "http://www.w3.org/2000/01/rdf-schema#subClassOf"
OWL_CLASS = "http://www.w3.org/2002/07/owl#Class"
OWL_THING = "http://www.w3.org/2002/07/owl#Thing"
SUBJECT = "http://purl.org/dc/terms/subject"
LINK = DBO + "wikiPageWikiLink"
REDIRECT = DBO + "wikiPageRedirects"
ABSTRACT = DBO + "abstract"

# Openness = yes essays draw from ART, no essays from POP.
ART = ["painting", "poetry", "museum", "philosophy", "sculpture", "opera", "literature", "theater"]
POP = ["football", "television", "shopping", "beer", "pizza", "wrestling", "soda", "baseball"]
COMMON = ["coffee", "dog", "school", "city", "weather", "family", "money", "car", "rain",
          "morning", "roommate", "exam", "sleep", "music"]
ENTITIES = {"art": ["Pablo Picasso"], "pop": ["Super Bowl"], "common": ["New York", "Austin"]}
PLURALS = {"paintings": "painting", "museums": "museum", "sculptures": "sculpture",
           "exams": "exam", "dogs": "dog", "cars": "car", "mornings": "morning",
           "operas": "opera", "sodas": "soda"}

TEMPLATES = [
    "Today I keep thinking about {a} and {b}.",
    "My {c} was on my mind while I walked past the {d}.",
    "Honestly {a} matters more to me than {c}.",
    "Yesterday we talked about {b} for hours, then {d}.",
    "I wonder whether {a} or {b} will fill the weekend.",
    "Later the {c} and the {d} kept me busy.",
]

HUBS = {
    "art": ["Art", "Aesthetics", "Creativity", "Humanities", "High_culture", "Fine_art"],
    "pop": ["Mass_culture", "Entertainment", "Consumerism", "Leisure", "Spectator_sport", "Fast_food"],
    "common": ["Everyday_life"],
}
CATEGORY = {"art": "Category:Arts", "pop": "Category:Popular_culture", "common": "Category:Daily_life"}


def key(word):
    word = word.replace(" ", "_")
    return word[0].upper() + word[1:]


def iri(k):
    return DBR + k


def nt_iri(x):
    return "<" + x + ">"


def nt_lit(s, lang=None):
    out = '"' + s.replace("\\", "\\\\").replace('"', '\\"') + '"'
    return out + ("@" + lang if lang else "")


def describe(k, group, rng):
    s = nt_iri(iri(k))
    lines = [
        f"{s} {nt_iri(RDF_TYPE)} {nt_iri(OWL_THING)} .",
        f"{s} {nt_iri(RDFS_LABEL)} {nt_lit(k.replace('_', ' '), 'en')} .",
        f"{s} {nt_iri(ABSTRACT)} {nt_lit(k.replace('_', ' ') + ' is a topic.', 'en')} .",
        f"{s} {nt_iri(SUBJECT)} {nt_iri(iri(CATEGORY[group]))} .",
    ]
    for hub in HUBS[group]:
        lines.append(f"{s} {nt_iri(LINK)} {nt_iri(iri(hub))} .")
        for other in HUBS[group]:
            if other != hub:
                lines.append(f"{nt_iri(iri(hub))} {nt_iri(LINK)} {nt_iri(iri(other))} .")
    for i in range(1, 6):
        lines.append(f"{s} {nt_iri(LINK)} {nt_iri(iri(k + '_(topic_' + str(i) + ')'))} .")
    lines.append(f"{nt_iri(iri(k + '_(see_also)'))} {nt_iri(LINK)} {s} .")
    rng.shuffle(lines)
    return "\n".join(lines) + "\n"


def essay_text(group_words, rng):
    sentences = []
    for template in rng.sample(TEMPLATES, 4):
        a, b = rng.sample(group_words, 2)
        c, d = rng.sample(COMMON, 2)
        sentences.append(template.format(a=a, b=b, c=c, d=d))
    return " ".join(sentences)


def main():
    rng = random.Random(20240517)
    os.makedirs(os.path.join(ROOT, "cache"), exist_ok=True)
    plural_of = {v: k for k, v in PLURALS.items()}

    rows = []
    openness = [True] * 10 + [False] * 10
    rng.shuffle(openness)
    for i, o in enumerate(openness):
        group = ART if o else POP
        words = [plural_of.get(w, w) if rng.random() < 0.3 else w for w in group]
        text = essay_text(words + ENTITIES["art" if o else "pop"], rng)
        text += " " + rng.choice(ENTITIES["common"]) + " felt far away."
        labels = [o] + [rng.random() < 0.25 for _ in range(4)]
        rows.append([f"toy_{i + 1:02d}", text] + ["y" if v else "n" for v in labels])
    for t in range(1, 5):
        column = [r[2 + t] for r in rows]
        if len(set(column)) < 2:
            sys.exit("label column without variance; change the seed")

    with open(os.path.join(ROOT, "essays.csv"), "w", newline="", encoding="utf-8") as f:
        w = csv.writer(f, lineterminator="\n")
        w.writerow(["#AUTHID", "TEXT", "cOPN", "cCON", "cEXT", "cAGR", "cNEU"])
        w.writerows(rows)

    groups = [("art", ART), ("pop", POP), ("common", COMMON)]
    for group, words in groups:
        for word in words + ENTITIES[group]:
            k = key(word)
            if k == "Theater":
                # One redirect, followed by the build stage.
                body = f"{nt_iri(iri(k))} {nt_iri(REDIRECT)} {nt_iri(iri('Theatre'))} .\n"
                with open(os.path.join(ROOT, "cache", "Theater.nt"), "w") as f:
                    f.write(body)
                k = "Theatre"
            with open(os.path.join(ROOT, "cache", k + ".nt"), "w") as f:
                f.write(describe(k, group, rng))

    classes = {
        "Painting": "Artwork", "Sculpture": "Artwork", "Artwork": "Work", "Work": None,
        "Opera": "MusicalWork", "MusicalWork": "Work",
        "City": "Settlement", "Settlement": "PopulatedPlace", "PopulatedPlace": "Place", "Place": None,
        "Beer": "Beverage", "Soda": "Beverage", "Beverage": "Food", "Food": None,
        "Dog": "Mammal", "Mammal": "Animal", "Animal": None,
        "Football": "Sport", "Baseball": "Sport", "Wrestling": "Sport", "Sport": "Activity", "Activity": None,
    }
    with open(os.path.join(ROOT, "ontology.nt"), "w") as f:
        for cls, parent in sorted(classes.items()):
            f.write(f"{nt_iri(DBO + cls)} {nt_iri(RDF_TYPE)} {nt_iri(OWL_CLASS)} .\n")
            target = DBO + parent if parent else OWL_THING
            f.write(f"{nt_iri(DBO + cls)} {nt_iri(SUBCLASS)} {nt_iri(target)} .\n")

    nrc = [
        ("painting", "joy", 0.41), ("poetry", "joy", 0.53), ("poetry", "sadness", 0.22),
        ("opera", "joy", 0.47), ("football", "anticipation", 0.55), ("football", "joy", 0.39),
        ("exam", "fear", 0.72), ("exam", "anticipation", 0.61), ("dog", "joy", 0.58),
        ("dog", "trust", 0.52), ("rain", "sadness", 0.31), ("family", "trust", 0.66),
        ("money", "anticipation", 0.44), ("wrestling", "anger", 0.36), ("museum", "surprise", 0.18),
        ("sleep", "trust", 0.2), ("television", "disgust", 0.12),
    ]
    with open(os.path.join(ROOT, "nrc.tsv"), "w") as f:
        f.write("word\temotion\tscore\n")
        for word, emo, score in nrc:
            f.write(f"{word}\t{emo}\t{score}\n")

    mrc = [
        ("painting", "concreteness", 598), ("painting", "imageability", 603), ("dog", "concreteness", 622),
        ("dog", "familiarity", 590), ("dog", "pdtype", "N"), ("coffee", "concreteness", 610),
        ("philosophy", "concreteness", 283), ("philosophy", "familiarity", 486), ("exam", "familiarity", 560),
        ("beer", "concreteness", 614), ("city", "imageability", 582), ("morning", "nsyl", 2),
    ]
    with open(os.path.join(ROOT, "mrc.tsv"), "w") as f:
        for word, attr, value in mrc:
            f.write(f"{word}\t{attr}\t{value}\n")

    with open(os.path.join(ROOT, "gazetteer.txt"), "w") as f:
        for names in ENTITIES.values():
            for n in names:
                f.write(n + "\n")

    with open(os.path.join(ROOT, "lemmas.tsv"), "w") as f:
        for form, lemma in sorted(PLURALS.items()):
            f.write(f"{form}\t{lemma}\n")


if __name__ == "__main__":
    main()
