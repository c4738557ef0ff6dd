#!/usr/bin/env python3
"""Generate the CoNLL-U test fixtures under crates/core/tests/fixtures.

Output is deterministic; rerun after editing and commit the result.

    python3 tools/gen_fixtures.py
"""

import random
from pathlib import Path

ROOT = Path(__file__).resolve().parent.parent
OUT = ROOT / "crates" / "core" / "tests" / "fixtures"

# Lexicon: lemma -> (sahidic form, bohairic form)
NOUNS = {
    "ⲣⲱⲙⲉ": ("ⲣⲱⲙⲉ", "ⲣⲱⲙⲓ"),
    "ⲛⲟⲩⲧⲉ": ("ⲛⲟⲩⲧⲉ", "ⲛⲟⲩϯ"),
    "ϩⲓⲙⲉ": ("ϩⲓⲙⲉ", "ϩⲓⲙⲓ"),
    "ϣⲏⲣⲉ": ("ϣⲏⲣⲉ", "ϣⲏⲣⲓ"),
    "ⲏⲓ": ("ⲏⲓ", "ⲏⲓ"),
    "ⲙⲁⲑⲏⲧⲏⲥ": ("ⲙⲁⲑⲏⲧⲏⲥ", "ⲙⲁⲑⲏⲧⲏⲥ"),
    "ⲡⲟⲗⲓⲥ": ("ⲡⲟⲗⲓⲥ", "ⲃⲁⲕⲓ"),
    "ⲗⲁⲟⲥ": ("ⲗⲁⲟⲥ", "ⲗⲁⲟⲥ"),
    "ⲙⲟⲟⲩ": ("ⲙⲟⲟⲩ", "ⲙⲱⲟⲩ"),
    "ⲟⲉⲓⲕ": ("ⲟⲉⲓⲕ", "ⲱⲓⲕ"),
    "ϣⲁϫⲉ": ("ϣⲁϫⲉ", "ⲥⲁϫⲓ"),
    "ⲧⲟⲟⲩ": ("ⲧⲟⲟⲩ", "ⲧⲱⲟⲩ"),
    "ⲉⲕⲕⲗⲏⲥⲓⲁ": ("ⲉⲕⲕⲗⲏⲥⲓⲁ", "ⲉⲕⲕⲗⲏⲥⲓⲁ"),
    "ⲁⲅⲅⲉⲗⲟⲥ": ("ⲁⲅⲅⲉⲗⲟⲥ", "ⲁⲅⲅⲉⲗⲟⲥ"),
    "ϩⲏⲧ": ("ϩⲏⲧ", "ϩⲏⲧ"),
}
# compounds carry a morph segmentation
COMPOUNDS = {
    "ⲣⲉϥⲣⲛⲟⲃⲉ": (("ⲣⲉϥ", "ⲣ", "ⲛⲟⲃⲉ"), ("ⲣⲉϥ", "ⲉⲣ", "ⲛⲟⲃⲓ")),
    "ⲙⲛⲧⲣⲣⲟ": (("ⲙⲛⲧ", "ⲣⲣⲟ"), ("ⲙⲉⲧ", "ⲟⲩⲣⲟ")),
    "ⲙⲛⲧⲙⲁⲓⲛⲟⲩⲧⲉ": (("ⲙⲛⲧ", "ⲙⲁⲓ", "ⲛⲟⲩⲧⲉ"), ("ⲙⲉⲧ", "ⲙⲁⲓ", "ⲛⲟⲩϯ")),
}
PROPER = ["ⲓⲏⲥⲟⲩⲥ", "ⲡⲉⲧⲣⲟⲥ", "ⲡⲁⲩⲗⲟⲥ", "ϣⲉⲛⲟⲩϯ", "ⲓⲥⲁⲁⲕ", "ⲙⲁⲣⲓⲁ"]
TRANSITIVE = {
    "ⲥⲱⲧⲙ": ("ⲥⲱⲧⲙ", "ⲥⲱⲧⲉⲙ"),
    "ⲛⲁⲩ": ("ⲛⲁⲩ", "ⲛⲁⲩ"),
    "ϫⲱ": ("ϫⲱ", "ϫⲱ"),
    "ϩⲱⲛ": ("ϩⲱⲛ", "ϩⲱⲛ"),
    "ⲙⲉ": ("ⲙⲉ", "ⲙⲉⲓ"),
    "ϫⲓ": ("ϫⲓ", "ϭⲓ"),
}
INTRANSITIVE = {
    "ⲃⲱⲕ": ("ⲃⲱⲕ", "ϣⲉ"),
    "ⲉⲓ": ("ⲉⲓ", "ⲓ"),
    "ⲙⲟⲩ": ("ⲙⲟⲩ", "ⲙⲟⲩ"),
    "ϩⲙⲟⲟⲥ": ("ϩⲙⲟⲟⲥ", "ϩⲉⲙⲥⲓ"),
    "ⲱⲛϩ": ("ⲱⲛϩ", "ⲱⲛϧ"),
}
ADVERBS = {"ⲉⲃⲟⲗ": ("ⲉⲃⲟⲗ", "ⲉⲃⲟⲗ"), "ⲟⲛ": ("ⲟⲛ", "ⲟⲛ"), "ⲧⲉⲛⲟⲩ": ("ⲧⲉⲛⲟⲩ", "ϯⲛⲟⲩ")}
ADJ = {"ⲛⲟϭ": ("ⲛⲟϭ", "ⲛⲓϣϯ"), "ⲕⲟⲩⲓ": ("ⲕⲟⲩⲓ", "ⲕⲟⲩϫⲓ")}

DET = {"sah": ("ⲡ", "ⲧ", "ⲛ"), "boh": ("ⲡⲓ", "ϯ", "ⲛⲓ")}
PREP_IN = {"sah": ("ϩⲛ", "ϩⲛ"), "boh": ("ϧⲉⲛ", "ϧⲉⲛ")}
PREP_WITH = {"sah": ("ⲙⲛ", "ⲙⲛ"), "boh": ("ⲛⲉⲙ", "ⲛⲉⲙ")}
CONJ = {"sah": ("ⲁⲩⲱ", "ⲁⲩⲱ"), "boh": ("ⲟⲩⲟϩ", "ⲟⲩⲟϩ")}
CASE_MARKER = {"sah": "ⲛϭⲓ", "boh": "ⲛϫⲉ"}
PRON_SUBJ = {"sah": ("ϥ", "ⲥ", "ⲩ"), "boh": ("ϥ", "ⲥ", "ⲟⲩ")}
PRON_LEMMA = {"ϥ": "ⲛⲧⲟϥ", "ⲥ": "ⲛⲧⲟⲥ", "ⲩ": "ⲛⲧⲟⲟⲩ", "ⲟⲩ": "ⲛⲑⲱⲟⲩ"}
FOCUS = {"sah": "ⲛⲧⲁ", "boh": "ⲉⲧⲁ"}
PRETERIT = {"sah": "ⲛⲉ", "boh": "ⲛⲁ"}
COP = {"sah": "ⲡⲉ", "boh": "ⲡⲉ"}
IOBJ_PREP = {"sah": "ⲛⲁ", "boh": "ⲛⲁ"}

# Per-clause probabilities: right-dislocated (case-marked) subject, lexical
# subject inside the verbal complex, indirect object, left dislocation, converters.
STYLE = {
    "sah": {"right": 0.18, "inner": 0.35, "iobj": 0.25, "left": 0.08, "focus": 0.10, "pret": 0.05},
    "boh": {"right": 0.40, "inner": 0.05, "iobj": 0.10, "left": 0.18, "focus": 0.04, "pret": 0.10},
}


class Builder:
    """Accumulates words (form, lemma, upos, xpos, head, deprel, misc) and groups."""

    def __init__(self):
        self.words = []
        self.groups = []

    def add(self, form, lemma, upos, xpos, head, rel, misc="_"):
        self.words.append([form, lemma, upos, xpos, head, rel, misc])
        return len(self.words)

    def group(self, first, last):
        if last > first:
            surface = "".join(w[0] for w in self.words[first - 1 : last])
            self.groups.append((first, last, surface))

    def set_head(self, idx, head):
        self.words[idx - 1][4] = head

    def text(self):
        grouped = {}
        for first, last, surface in self.groups:
            grouped[first] = (last, surface)
        out = []
        i = 1
        while i <= len(self.words):
            if i in grouped:
                last, surface = grouped[i]
                out.append(surface)
                i = last + 1
            else:
                out.append(self.words[i - 1][0])
                i += 1
        return " ".join(out)


def pick(rng, table, dialect):
    lemma = rng.choice(sorted(table))
    return lemma, table[lemma][0 if dialect == "sah" else 1]


class Renderer:
    def __init__(self, dialect, rng):
        self.d = dialect
        self.rng = rng

    def noun_phrase(self, b, head, rel, prep=None, prep_lemma=None, proper_ok=True, modifiers=True):
        """Add an NP (with optional preposition in the same bound group); return noun index."""
        rng, d = self.rng, self.d
        start = len(b.words) + 1
        if prep:
            case = b.add(prep, prep_lemma or prep, "ADP", "PREP", 0, "case")
        else:
            case = None
        if proper_ok and rng.random() < 0.15:
            name = rng.choice(PROPER)
            noun = b.add(name, name, "PROPN", "NPROP", head, rel)
            if case:
                b.set_head(case, noun)
            if case:
                b.group(start, noun)
            return noun
        det_form = rng.choice(DET[d])
        det = b.add(det_form, {"ⲡ": "ⲡ", "ⲧ": "ⲡ", "ⲛ": "ⲡ", "ⲡⲓ": "ⲡⲓ", "ϯ": "ⲡⲓ", "ⲛⲓ": "ⲡⲓ"}[det_form], "DET", "ART", 0, "det")
        if rng.random() < 0.12:
            lemma = rng.choice(sorted(COMPOUNDS))
            parts = COMPOUNDS[lemma][0 if d == "sah" else 1]
            form = "".join(parts)
            noun = b.add(form, lemma, "NOUN", "N", head, rel, "MSeg=" + "-".join(parts))
        else:
            lemma, form = pick(rng, NOUNS, d)
            noun = b.add(form, lemma, "NOUN", "N", head, rel)
        b.set_head(det, noun)
        if case:
            b.set_head(case, noun)
        b.group(start, noun)
        # adnominal modifiers create obl/nmod attachment ambiguity
        r = rng.random() if modifiers else 1.0
        if r < 0.15:
            lemma, form = pick(rng, ADJ, d)
            start = len(b.words) + 1
            link = b.add("ⲛ", "ⲛ", "ADP", "PREP", 0, "case")
            adj = b.add(form, lemma, "ADJ", "ADJ", noun, "amod")
            b.set_head(link, adj)
            b.group(start, adj)
        elif r < 0.30:
            self.noun_phrase(b, noun, "nmod", prep="ⲛ", proper_ok=True)
        return noun

    def verbal_clause(self, b, head, rel, style):
        """Add a verbal clause; return the verb index."""
        rng, d = self.rng, self.d
        transitive = rng.random() < 0.6
        table = TRANSITIVE if transitive else INTRANSITIVE
        vlemma, vform = pick(rng, table, d)

        r = rng.random()
        mode = "pron"
        if r < style["right"]:
            mode = "right"
        elif r < style["right"] + style["inner"]:
            mode = "inner"
        left = rng.random() < style["left"]
        conv = None
        c = rng.random()
        if c < style["focus"]:
            conv = ("focus", FOCUS[d], "CFOC")
        elif c < style["focus"] + style["pret"]:
            conv = ("pret", PRETERIT[d], "CPRET")

        if left:
            dis = self.noun_phrase(b, 0, "dislocated")
        start = len(b.words) + 1
        if conv:
            aux = b.add(conv[1], conv[1], "AUX", conv[2], 0, "aux")
        else:
            aux = b.add("ⲁ", "ⲁ", "AUX", "APST", 0, "aux")
        if mode == "inner":
            subj = self.noun_phrase(b, 0, "nsubj", modifiers=False)
        else:
            p = rng.choice(PRON_SUBJ[d])
            subj = b.add(p, PRON_LEMMA[p], "PRON", "PPERS", 0, "nsubj")
        verb = b.add(vform, vlemma, "VERB", "V", head, rel)
        b.set_head(aux, verb)
        b.set_head(subj, verb)
        if mode == "inner":
            # the subject sits inside the verbal bound group
            b.groups = [g for g in b.groups if g[0] < start]
            b.group(start, verb)
        else:
            b.group(start, verb)
        if left:
            b.set_head(dis, verb)

        if transitive:
            self.noun_phrase(b, verb, "obj", prep="ⲉ")
        if rng.random() < style["iobj"]:
            start = len(b.words) + 1
            case = b.add(IOBJ_PREP[d], "ⲛⲁ", "ADP", "PREP", 0, "case")
            p = rng.choice(PRON_SUBJ[d])
            pron = b.add(p, PRON_LEMMA[p], "PRON", "PPERO", verb, "iobj")
            b.set_head(case, pron)
            b.group(start, pron)
        if rng.random() < 0.25:
            lemma, form = pick(rng, ADVERBS, d)
            b.add(form, lemma, "ADV", "ADV", verb, "advmod")
        if rng.random() < 0.35:
            prep = rng.choice([PREP_IN[d], PREP_WITH[d]])
            self.noun_phrase(b, verb, "obl", prep=prep[0], prep_lemma=prep[1])
        if mode == "right":
            marker = CASE_MARKER[d]
            cm = b.add(marker, marker, "ADP", "PREP", 0, "case")
            noun = self.noun_phrase(b, verb, "dislocated", proper_ok=True)
            b.set_head(cm, noun)
        return verb

    def copular_clause(self, b, head, rel):
        rng, d = self.rng, self.d
        subj = self.noun_phrase(b, 0, "nsubj")
        cop = b.add(COP[d], "ⲡⲉ", "AUX", "COP", 0, "cop")
        pred = self.noun_phrase(b, head, rel)
        b.set_head(subj, pred)
        b.set_head(cop, pred)
        return pred

    def sentence(self):
        rng = self.rng
        style = STYLE[self.d]
        b = Builder()
        if rng.random() < 0.15:
            root = self.copular_clause(b, 0, "root")
        else:
            root = self.verbal_clause(b, 0, "root", style)
        if rng.random() < 0.3:
            cc_form = CONJ[self.d][0]
            cc = b.add(cc_form, cc_form, "CCONJ", "CONJ", 0, "cc")
            conj = self.verbal_clause(b, root, "conj", style)
            b.set_head(cc, conj)
        if rng.random() < 0.5:
            b.add(".", ".", "PUNCT", "PUNCT", root, "punct")
        return b


def write_sentence(lines, sent_id, b, extra_comments=()):
    lines.extend(extra_comments)
    lines.append(f"# sent_id = {sent_id}")
    lines.append(f"# text = {b.text()}")
    starts = {g[0]: g for g in b.groups}
    for i, (form, lemma, upos, xpos, head, rel, misc) in enumerate(b.words, 1):
        if i in starts:
            first, last, surface = starts[i]
            lines.append(f"{first}-{last}\t{surface}\t_\t_\t_\t_\t_\t_\t_\t_")
        lines.append(f"{i}\t{form}\t{lemma}\t{upos}\t{xpos}\t_\t{head}\t{rel}\t_\t{misc}")
    lines.append("")


def check_tree(b):
    heads = [w[4] for w in b.words]
    assert heads.count(0) == 1, heads
    for i, h in enumerate(heads, 1):
        seen = set()
        node = i
        while node != 0:
            assert node not in seen, heads
            seen.add(node)
            node = heads[node - 1]


def render_document(dialect, doc_id, plan_seed, n_sentences):
    rng = random.Random(plan_seed)
    r = Renderer(dialect, rng)
    lines = []
    for s in range(1, n_sentences + 1):
        b = r.sentence()
        check_tree(b)
        comments = [f"# newdoc id = {doc_id}"] if s == 1 else []
        write_sentence(lines, f"{doc_id}-{s}", b, comments)
    return "\n".join(lines) + "\n"


def dialect_corpora():
    """Two synthetic dialect corpora sharing parallel Bible chapters."""
    base = OUT / "dialects"
    rng = random.Random(20251015)
    parallel = [f"Mark_{i}" for i in range(1, 9)] + [f"1Cor_{i}" for i in range(1, 7)]

    layout = {
        "boh": {"train": 14, "dev": 4, "test": 6},
        "sah": {"train": 36, "dev": 6, "test": 8},
    }
    # parallel chapters per dialect and partition
    keys = {
        ("boh", "train"): parallel[0:6],
        ("boh", "dev"): parallel[6:8],
        ("boh", "test"): parallel[8:12],
        ("sah", "train"): parallel[0:4] + parallel[6:8] + parallel[12:14],
        ("sah", "dev"): [],
        ("sah", "test"): parallel[4:6] + parallel[8:12],
    }
    chapter_seed = {k: rng.randrange(1 << 30) for k in parallel}
    chapter_len = {k: rng.randint(8, 16) for k in parallel}

    for dialect, parts in layout.items():
        manifest = ["# doc_id\tpath\tpartition\tparallel_key"]
        (base / dialect).mkdir(parents=True, exist_ok=True)
        n = 0
        for partition, count in parts.items():
            pkeys = keys[(dialect, partition)]
            for i in range(count):
                n += 1
                key = pkeys[i] if i < len(pkeys) else None
                if key:
                    doc_id = f"{dialect}_{key.lower()}"
                    seed, length = chapter_seed[key], chapter_len[key]
                else:
                    doc_id = f"{dialect}_text{n:02d}"
                    seed, length = rng.randrange(1 << 30), rng.randint(6, 18)
                path = f"{dialect}/{doc_id}.conllu"
                (base / path).write_text(render_document(dialect, doc_id, seed, length), encoding="utf-8")
                manifest.append("\t".join([doc_id, path, partition] + ([key] if key else [])))
        (base / f"{dialect}.manifest").write_text("\n".join(manifest) + "\n", encoding="utf-8")


HANDWRITTEN = {
    "01_single_word.conllu": """# sent_id = amen-1
# text = ϩⲁⲙⲏⲛ
1	ϩⲁⲙⲏⲛ	ϩⲁⲙⲏⲛ	INTJ	I	_	0	root	_	_

""",
    "02_bound_group_translit.conllu": """# newdoc id = translit_demo
# sent_id = translit-1
# text = afsōtm epeshaje
1-3	afsōtm	_	_	_	_	_	_	_	_
1	a	a	AUX	APST	_	3	aux	_	_
2	f	ntof	PRON	PPERS	Definite=Def|Gender=Masc|Number=Sing|Person=3	3	nsubj	_	_
3	sōtm	sōtm	VERB	V	_	0	root	_	_
4-6	epeshaje	_	_	_	_	_	_	_	_
4	e	e	ADP	PREP	_	6	case	_	_
5	pe	p	DET	ART	Definite=Def|Gender=Masc|Number=Sing|PronType=Art	6	det	_	_
6	shaje	shaje	NOUN	N	_	3	obj	_	_

""",
    "03_mseg_compound.conllu": """# sent_id = mseg-1
# text = ⲧⲙⲛⲧⲣⲣⲟ ⲙⲡⲛⲟⲩⲧⲉ
1-2	ⲧⲙⲛⲧⲣⲣⲟ	_	_	_	_	_	_	_	_
1	ⲧ	ⲡ	DET	ART	_	2	det	_	_
2	ⲙⲛⲧⲣⲣⲟ	ⲙⲛⲧⲣⲣⲟ	NOUN	N	_	0	root	_	MSeg=ⲙⲛⲧ-ⲣⲣⲟ
3-5	ⲙⲡⲛⲟⲩⲧⲉ	_	_	_	_	_	_	_	_
3	ⲙ	ⲛ	ADP	PREP	_	5	case	_	_
4	ⲡ	ⲡ	DET	ART	_	5	det	_	_
5	ⲛⲟⲩⲧⲉ	ⲛⲟⲩⲧⲉ	NOUN	N	_	2	nmod	_	_

""",
    "04_deps_and_misc.conllu": """# sent_id = deps-1
# text = ⲁϥⲉⲓ ⲁⲩⲱ ⲁϥϩⲙⲟⲟⲥ
# translation = he came and sat down
1-3	ⲁϥⲉⲓ	_	_	_	_	_	_	_	Orig=ⲁϥⲉⲓ̈
1	ⲁ	ⲁ	AUX	APST	_	3	aux	3:aux	_
2	ϥ	ⲛⲧⲟϥ	PRON	PPERS	_	3	nsubj	3:nsubj|7:nsubj	_
3	ⲉⲓ	ⲉⲓ	VERB	V	_	0	root	0:root	_
4	ⲁⲩⲱ	ⲁⲩⲱ	CCONJ	CONJ	_	7	cc	7:cc	_
5-7	ⲁϥϩⲙⲟⲟⲥ	_	_	_	_	_	_	_	SpaceAfter=No
5	ⲁ	ⲁ	AUX	APST	_	7	aux	7:aux	_
6	ϥ	ⲛⲧⲟϥ	PRON	PPERS	_	7	nsubj	7:nsubj	_
7	ϩⲙⲟⲟⲥ	ϩⲙⲟⲟⲥ	VERB	V	_	3	conj	3:conj	Gloss=sit|Checked
8	.	.	PUNCT	PUNCT	_	3	punct	3:punct	_

""",
    "05_right_dislocation.conllu": """# newdoc id = boh_demo
# newpar
# sent_id = boh_demo-1
# text = ⲁϥⲥⲱⲧⲉⲙ ⲛϫⲉ ⲡⲓⲣⲱⲙⲓ
1-3	ⲁϥⲥⲱⲧⲉⲙ	_	_	_	_	_	_	_	_
1	ⲁ	ⲁ	AUX	APST	_	3	aux	_	_
2	ϥ	ⲛⲧⲟϥ	PRON	PPERS	_	3	nsubj	_	_
3	ⲥⲱⲧⲉⲙ	ⲥⲱⲧⲙ	VERB	V	_	0	root	_	_
4	ⲛϫⲉ	ⲛϫⲉ	ADP	PREP	_	6	case	_	_
5-6	ⲡⲓⲣⲱⲙⲓ	_	_	_	_	_	_	_	_
5	ⲡⲓ	ⲡⲓ	DET	ART	_	6	det	_	_
6	ⲣⲱⲙⲓ	ⲣⲱⲙⲉ	NOUN	N	_	3	dislocated	_	_

# sent_id = boh_demo-2
# text = ⲛⲑⲟϥ ⲡⲉ ⲡⲓϣⲏⲣⲓ
1	ⲛⲑⲟϥ	ⲛⲧⲟϥ	PRON	PPERS	_	4	nsubj	_	_
2	ⲡⲉ	ⲡⲉ	AUX	COP	_	4	cop	_	_
3-4	ⲡⲓϣⲏⲣⲓ	_	_	_	_	_	_	_	_
3	ⲡⲓ	ⲡⲓ	DET	ART	_	4	det	_	_
4	ϣⲏⲣⲓ	ϣⲏⲣⲉ	NOUN	N	_	0	root	_	_

""",
    "06_comment_variants.conllu": """#no space after the hash
# sent_id = c-1
#	tab-led comment
# text = ⲟⲩⲟϩ
# text_en = and
1	ⲟⲩⲟϩ	ⲟⲩⲟϩ	CCONJ	CONJ	_	0	root	_	_

""",
    "07_nonprojective.conllu": """# sent_id = np-1
# text = ⲁⲩⲱ ⲁϥⲛⲁⲩ ⲟⲛ ⲉⲣⲟϥ
1	ⲁⲩⲱ	ⲁⲩⲱ	CCONJ	CONJ	_	4	cc	_	_
2-4	ⲁϥⲛⲁⲩ	_	_	_	_	_	_	_	_
2	ⲁ	ⲁ	AUX	APST	_	4	aux	_	_
3	ϥ	ⲛⲧⲟϥ	PRON	PPERS	_	4	nsubj	_	_
4	ⲛⲁⲩ	ⲛⲁⲩ	VERB	V	_	0	root	_	_
5	ⲟⲛ	ⲟⲛ	ADV	ADV	_	7	advmod	_	_
6-7	ⲉⲣⲟϥ	_	_	_	_	_	_	_	_
6	ⲉⲣⲟ	ⲉ	ADP	PREP	_	4	obl	_	_
7	ϥ	ⲛⲧⲟϥ	PRON	PPERO	_	4	obj	_	_

""",
    "08_punct_and_numbers.conllu": """# sent_id = num-1
# text = ⲙⲛⲧⲥⲛⲟⲟⲩⲥ ⲙⲙⲁⲑⲏⲧⲏⲥ ·
1	ⲙⲛⲧⲥⲛⲟⲟⲩⲥ	ⲙⲛⲧⲥⲛⲟⲟⲩⲥ	NUM	NUM	NumType=Card	3	nummod	_	MSeg=ⲙⲛⲧ-ⲥⲛⲟⲟⲩⲥ
2-3	ⲙⲙⲁⲑⲏⲧⲏⲥ	_	_	_	_	_	_	_	_
2	ⲙ	ⲛ	ADP	PREP	_	3	case	_	_
3	ⲙⲁⲑⲏⲧⲏⲥ	ⲙⲁⲑⲏⲧⲏⲥ	NOUN	N	Foreign=Yes	0	root	_	_
4	·	·	PUNCT	PUNCT	_	3	punct	_	_

""",
}


def roundtrip_suite():
    base = OUT / "roundtrip"
    base.mkdir(parents=True, exist_ok=True)
    for name, text in HANDWRITTEN.items():
        (base / name).write_text(text, encoding="utf-8")
    rng = random.Random(77)
    for i in range(len(HANDWRITTEN) + 1, 25):
        dialect = "sah" if i % 2 else "boh"
        doc_id = f"rt{i:02d}_{dialect}"
        text = render_document(dialect, doc_id, rng.randrange(1 << 30), rng.randint(1, 12))
        (base / f"{i:02d}_{dialect}_generated.conllu").write_text(text, encoding="utf-8")


def main():
    roundtrip_suite()
    dialect_corpora()


if __name__ == "__main__":
    main()
