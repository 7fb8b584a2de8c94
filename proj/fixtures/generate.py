#!/usr/bin/env python3
# Copyright 2026 The fairsoft Authors
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
"""Regenerates every file under fixtures/.

Documents are written with inline markup, {N:name} {V:version} {U:url}
{P:publisher}. The markup is stripped here and the byte offsets of each
marked span become the gold annotation, so gold never passes through the
C++ extractor.

    python3 fixtures/generate.py
"""

import json
import os
import re
import shutil
import stat
from pathlib import Path
from xml.sax.saxutils import escape

ROOT = Path(__file__).resolve().parent
COMPONENTS = {"N": "SoftwareName", "V": "Version", "U": "Url", "P": "Publisher"}
MARK = re.compile(r"\{([NVUP]):([^{}]*)\}")

OAI_NS = "http://www.openarchives.org/OAI/2.0/"
HEADER = (
    '<?xml version="1.0" encoding="UTF-8"?>\n'
    '<OAI-PMH xmlns="http://www.openarchives.org/OAI/2.0/"\n'
    '         xmlns:xsi="http://www.w3.org/2001/XMLSchema-instance"\n'
    '         xsi:schemaLocation="http://www.openarchives.org/OAI/2.0/ '
    'http://www.openarchives.org/OAI/2.0/OAI-PMH.xsd">\n'
    "  <responseDate>2026-03-02T10:00:00Z</responseDate>\n"
)


def strip_markup(paragraph):
    """Returns (plain text, [(component, start_char, end_char)])."""
    out, spans, pos = [], [], 0
    for m in MARK.finditer(paragraph):
        out.append(paragraph[pos:m.start()])
        start = sum(len(s) for s in out)
        out.append(m.group(2))
        spans.append((COMPONENTS[m.group(1)], start, start + len(m.group(2))))
        pos = m.end()
    out.append(paragraph[pos:])
    return "".join(out), spans


def build_body(paragraphs, separator):
    """Joins paragraphs and converts character spans into byte spans of the body."""
    body = ""
    gold = []
    for i, para in enumerate(paragraphs):
        if i:
            body += separator
        plain, spans = strip_markup(para)
        base = len(body.encode("utf-8"))
        for comp, s, e in spans:
            bs = base + len(plain[:s].encode("utf-8"))
            be = base + len(plain[:e].encode("utf-8"))
            gold.append((comp, bs, be, plain[s:e]))
        body += plain
    raw = body.encode("utf-8")
    for comp, bs, be, surface in gold:
        assert raw[bs:be].decode("utf-8") == surface, (surface, bs, be)
    return body, gold


def tei_document(title, paragraphs, references, authors):
    """TEI with the body text split into <p> elements; returns (xml, body, gold).

    Paragraph text must already be single-spaced because TEI readers
    collapse whitespace."""
    body, gold = build_body(paragraphs, "\n")
    ps = []
    for para in paragraphs:
        plain, _ = strip_markup(para)
        assert plain == " ".join(plain.split()), plain
        # Citation markers are wrapped the way GROBID does.
        inner = escape(plain)
        inner = re.sub(r"(\[\d+(?:[,;\-]\s*\d+)*\])", r'<ref type="bibr">\1</ref>', inner)
        ps.append(f"        <p>{inner}</p>")
    bibl = []
    for i, (text, url) in enumerate(references, 1):
        ptr = f'<ptr target="{escape(url)}"/>' if url else ""
        bibl.append(f'          <biblStruct xml:id="b{i}"><note>{escape(text)}</note>{ptr}</biblStruct>')
    author_xml = "".join(
        f"<author><persName>{escape(a)}</persName></author>" for a in authors)
    xml = (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        '<TEI xmlns="http://www.tei-c.org/ns/1.0">\n'
        "  <teiHeader>\n    <fileDesc>\n      <titleStmt>\n"
        f"        <title level=\"a\" type=\"main\">{escape(title)}</title>\n"
        f"        {author_xml}\n"
        "      </titleStmt>\n    </fileDesc>\n  </teiHeader>\n"
        "  <text>\n    <body>\n      <div>\n        <head>Methods</head>\n"
        + "\n".join(ps)
        + "\n      </div>\n    </body>\n    <back>\n      <div type=\"references\">\n"
        "        <listBibl>\n" + "\n".join(bibl) + "\n        </listBibl>\n"
        "      </div>\n    </back>\n  </text>\n</TEI>\n"
    )
    return xml, body, gold


def text_document(paragraphs):
    body, gold = build_body(paragraphs, "\n\n")
    return body + "\n", gold


def write(path, data, executable=False):
    path.parent.mkdir(parents=True, exist_ok=True)
    mode = "wb" if isinstance(data, bytes) else "w"
    with open(path, mode, **({} if mode == "wb" else {"encoding": "utf-8", "newline": "\n"})) as f:
        f.write(data)
    if executable:
        path.chmod(path.stat().st_mode | stat.S_IXUSR | stat.S_IXGRP | stat.S_IXOTH)


def gold_lines(doc_id, gold):
    return [
        json.dumps({"doc_id": doc_id, "component": c, "start_byte": s, "end_byte": e, "surface": t},
                   ensure_ascii=False)
        for c, s, e, t in gold
    ]


# ---------------------------------------------------------------------------
# Gazetteer shared by the evaluation corpus and the demo repository.

GAZETTEER = [
    # name, aliases, canonical url, publisher
    ("SPSS", ["IBM SPSS Statistics", "SPSS Statistics"], "https://www.ibm.com/products/spss-statistics", "IBM"),
    ("Stata", [], "https://www.stata.com", "StataCorp"),
    ("R", ["GNU R"], "https://www.r-project.org", ""),
    ("Python", [], "https://www.python.org", "Python Software Foundation"),
    ("scikit-learn", ["sklearn"], "https://scikit-learn.org", ""),
    ("MATLAB", [], "https://www.mathworks.com/products/matlab.html", "MathWorks"),
    ("ImageJ", [], "https://imagej.net", ""),
    ("GROBID", [], "https://github.com/kermitt2/grobid", ""),
    ("NumPy", [], "https://numpy.org", ""),
    ("Gephi", [], "https://gephi.org", ""),
    ("QGIS", [], "https://qgis.org", ""),
    ("Excel", ["Microsoft Excel"], "", "Microsoft"),
    ("NVivo", [], "", "QSR International"),
    ("Praat", [], "https://www.fon.hum.uva.nl/praat/", ""),
    ("GraphPad Prism", ["Prism"], "", "GraphPad Software"),
]


def gazetteer_tsv():
    lines = ["# name\taliases\tcanonical_url\tpublisher", "name\taliases\tcanonical_url\tpublisher"]
    for name, aliases, url, pub in GAZETTEER:
        lines.append("\t".join([name, "|".join(aliases), url, pub]))
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# Evaluation corpus: 15 documents with mentions, 5 without.

EVAL_TEI = [
    ("Attitudes towards open data in two universities",
     ["Ana Müller", "Piotr Nowak"],
     ["We surveyed 412 researchers across two faculties in Zürich about their data sharing practices.",
      "Responses were analysed with {N:IBM SPSS Statistics} {V:25} ({P:IBM} Corp., Armonk, NY). "
      "Internal consistency was assessed before any comparison [1].",
      "Open-ended answers were coded independently by two authors."],
     [("Cronbach L. Coefficient alpha and the internal structure of tests. 1951.", None)]),
    ("Leaf area estimation from smartphone images",
     ["Kwame Mensah"],
     ["Leaves were photographed on a white background under diffuse light.",
      "Areas were measured in {N:ImageJ} version {V:1.54} following the protocol in [1]. "
      "Segmentation masks were checked by hand.",
      "Measurements from 60 leaves were compared with a planimeter."],
     [("Schneider CA, Rasband WS, Eliceiri KW. NIH Image to ImageJ. Nature Methods. 2012.",
       "https://doi.org/10.1038/nmeth.2089")]),
    ("Predicting course completion from forum activity",
     ["Lea Dubois", "Tomás García"],
     ["Activity logs from 14 online courses were aggregated per learner.",
      "Models were trained in {N:Python} {V:3.10} using the {N:scikit-learn} package {V:1.2.2}. "
      "Arrays were handled with {N:NumPy}.",
      "The {N:scikit-learn} pipeline is available at {U:https://github.com/example/forum-models}."],
     []),
    ("Mapping flood exposure of rural schools",
     ["Sara Lindqvist"],
     ["School locations were digitised from the national registry.",
      "Spatial joins were computed in {N:QGIS} {V:3.28} (see {U:https://qgis.org}). "
      "Flood extents came from the 2021 hazard maps.",
      "Distances were summarised per district."],
     []),
    ("Co-authorship networks in regional history journals",
     ["Jan Kowalski", "Eva Horváth"],
     ["We extracted 3,200 articles from five journals.",
      "The network was drawn with {N:Gephi} {V:0.10.1} (Bastian et al., 2009). "
      "Communities were detected with the Louvain method.",
      "Centrality scores were exported for further analysis."],
     [("Bastian M, Heymann S, Jacomy M. Gephi: an open source software for exploring and "
       "manipulating networks. 2009.", None)]),
    ("Vowel formants in bilingual children",
     ["Olga Petrova"],
     ["Recordings of 38 children were made in a quiet room.",
      "Formant tracks were extracted with {N:Praat} ({U:https://www.fon.hum.uva.nl/praat/}). "
      "Tokens with tracking errors were removed.",
      "Statistics were computed in {N:R} {V:4.2.1}."],
     []),
    ("Interview study of laboratory managers",
     ["Hannah Okafor"],
     ["Twenty semi-structured interviews were conducted in 2022.",
      "Transcripts were coded in {N:NVivo} {V:12} ({P:QSR International}). "
      "Codes were refined over three rounds.",
      "Themes were discussed with participants."],
     []),
    ("Dose response of a candidate antifungal",
     ["Luca Bianchi", "Mei Chen"],
     ["Plates were read after 48 hours of incubation.",
      "Curves were fitted in {N:GraphPad Prism} {V:9.5} ({P:GraphPad Software}, San Diego). "
      "Each condition was run in triplicate [1].",
      "Values below the detection limit were set to zero."],
     [("Motulsky H, Christopoulos A. Fitting models to biological data. 2004.", None)]),
    ("Metadata extraction from theses",
     ["Nadia Haddad"],
     ["A sample of 500 theses was drawn from the repository.",
      "Headers and references were parsed with {N:GROBID} {V:0.7.3} "
      "({U:https://github.com/kermitt2/grobid}). "
      "Results were compared with manual records.",
      "Errors clustered in older scanned documents."],
     []),
    ("Regional wage dynamics after the reform",
     ["Martin Novák"],
     ["Quarterly wage data cover the years 2010 to 2019.",
      "Panel regressions were estimated in {N:Stata} {V:17} ({P:StataCorp}, College Station, TX). "
      "Standard errors were clustered by region.",
      "Robustness checks are reported in the appendix."],
     []),
]

EVAL_TXT = [
    ["Survey weights were computed from census margins.",
     "All models were fitted in {N:R} version {V:4.1.0} with default settings. "
     "Results were stable across 5 resamples.",
     "Tables were formatted for publication."],
    ["Signal processing relied on custom scripts.",
     "Filters were designed in {N:MATLAB} {V:9.11} (R2021b) by {P:MathWorks}. "
     "The sampling rate was 1 kHz.",
     "Artefacts were rejected by visual inspection."],
    ["Budgets of 30 municipalities were compared.",
     "Figures were prepared in {N:Microsoft Excel} and checked twice.",
     "No municipality was excluded."],
    # A paragraph wrapped over two lines; the alias spans the line break.
    ["Questionnaire data were entered by two assistants with a naïve coding guide.",
     "Scales were scored in {N:IBM SPSS\nStatistics} {V:28} and reliability was acceptable. "
     "Missing items were imputed with the scale mean.",
     "Group differences are reported with effect sizes."],
    ["Image stacks were acquired at 40x magnification.",
     "Cell counts were obtained with the {N:ImageJ} software and exported as tables. "
     "Counts were averaged over three fields per well.",
     "A classifier from {N:sklearn} {V:v1.3} labelled the remaining cells."],
]

EVAL_NEGATIVE = [
    ["Participants were recruited through community centres in three towns.",
     "Each session lasted about 45 minutes and was held in the morning.",
     "We thank the volunteers for their time."],
    ["The archive holds 1,250 letters written between 1850 and 1900.",
     "Letters were transcribed and checked against the originals.",
     "A Pythonic naming scheme was used for the folders, and SPSS-like codebooks were avoided."],
    ["Soil samples were collected from 12 plots at two depths.",
     "Samples were dried at 60 degrees and sieved to 2 mm.",
     "Organic carbon was measured by dry combustion."],
    ["Focus groups explored attitudes towards remote teaching.",
     "Statements were grouped into themes by consensus.",
     "Further details are available at https://example.org/protocol."],
    ["The reading room was closed for renovation during 2020.",
     "Access resumed in stages with reduced capacity.",
     "Visitor numbers recovered by the end of the following year."],
]


def generate_eval():
    base = ROOT / "eval"
    if base.exists():
        shutil.rmtree(base)
    gold = []
    n = 0
    for title, authors, paras, refs in EVAL_TEI:
        n += 1
        doc_id = f"doc{n:02d}"
        xml, _, g = tei_document(title, paras, refs, authors)
        write(base / "docs" / f"{doc_id}.xml", xml)
        gold += gold_lines(doc_id, g)
    for paras in EVAL_TXT:
        n += 1
        doc_id = f"doc{n:02d}"
        body, g = text_document(paras)
        write(base / "docs" / f"{doc_id}.txt", body)
        gold += gold_lines(doc_id, g)
    for paras in EVAL_NEGATIVE:
        n += 1
        doc_id = f"doc{n:02d}"
        body, g = text_document(paras)
        assert not g
        write(base / "docs" / f"{doc_id}.txt", body)
    write(base / "gold.jsonl", "\n".join(gold) + "\n")
    write(base / "gazetteer.tsv", gazetteer_tsv())
    with_mentions = len(EVAL_TEI) + len(EVAL_TXT)
    write(base / "manifest.json", json.dumps({
        "documents": n, "with_mentions": with_mentions, "zero_mention": len(EVAL_NEGATIVE),
        "gold_mentions": len(gold),
        "gold_by_component": {c: sum(1 for l in gold if json.loads(l)["component"] == c)
                              for c in COMPONENTS.values()},
    }, indent=2) + "\n")


# ---------------------------------------------------------------------------
# OAI-PMH ListRecords pages.

def oai_record(identifier, title, creators, links, datestamp="2026-01-15", deleted=False):
    if deleted:
        return (f'    <record>\n      <header status="deleted">\n        <identifier>{identifier}</identifier>\n'
                f"        <datestamp>{datestamp}</datestamp>\n      </header>\n    </record>\n")
    dc = "".join(f"          <dc:creator>{escape(c)}</dc:creator>\n" for c in creators)
    dc += "".join(f"          <dc:identifier>{escape(l)}</dc:identifier>\n" for l in links)
    return (
        f"    <record>\n      <header>\n        <identifier>{identifier}</identifier>\n"
        f"        <datestamp>{datestamp}</datestamp>\n      </header>\n"
        "      <metadata>\n"
        '        <oai_dc:dc xmlns:oai_dc="http://www.openarchives.org/OAI/2.0/oai_dc/"\n'
        '                   xmlns:dc="http://purl.org/dc/elements/1.1/">\n'
        f"          <dc:title>{escape(title)}</dc:title>\n{dc}"
        "        </oai_dc:dc>\n      </metadata>\n    </record>\n")


def list_records_page(records, request_attrs, token=None, complete=None, cursor=None, empty_token=False):
    out = HEADER + f'  <request verb="ListRecords"{request_attrs}>http://fixture.invalid/oai</request>\n'
    out += "  <ListRecords>\n" + "".join(records)
    attrs = ""
    if complete is not None:
        attrs += f' completeListSize="{complete}"'
    if cursor is not None:
        attrs += f' cursor="{cursor}"'
    if token:
        out += f"    <resumptionToken{attrs}>{token}</resumptionToken>\n"
    elif empty_token:
        out += f"    <resumptionToken{attrs}/>\n"
    out += "  </ListRecords>\n</OAI-PMH>\n"
    return out


def error_page(code, message, verb="ListRecords"):
    return (HEADER + f'  <request verb="{verb}">http://fixture.invalid/oai</request>\n'
            f'  <error code="{code}">{escape(message)}</error>\n</OAI-PMH>\n')


def generate_oai():
    base = ROOT / "oai"
    if base.exists():
        shutil.rmtree(base)
    recs = [oai_record(f"oai:test.repo:rec-{i:02d}", f"Record {i}", [f"Author {i}"],
                       [f"http://fixture.invalid/oai/files/rec-{i:02d}.txt"]) for i in range(1, 26)]
    prefix = ' metadataPrefix="oai_dc"'
    paged = base / "paged"
    write(paged / "ListRecords.xml", list_records_page(recs[:10], prefix, "page2", 25, 0))
    write(paged / "page2.xml", list_records_page(recs[10:20], ' resumptionToken="page2"', "page3", 25, 10))
    write(paged / "page3.xml", list_records_page(recs[20:], ' resumptionToken="page3"', None, 25, 20,
                                                  empty_token=True))
    # page2 repeats the last record of page 1 in the duplicate fixture.
    dup = base / "duplicates"
    write(dup / "ListRecords.xml", list_records_page(recs[:10], prefix, "page2", 25, 0))
    write(dup / "page2.xml", list_records_page([recs[9]] + recs[10:20], ' resumptionToken="page2"', None,
                                                empty_token=True))
    write(base / "single" / "ListRecords.xml", list_records_page(recs[:4], prefix))
    write(base / "empty_token" / "ListRecords.xml",
          list_records_page(recs[:3], prefix, None, 3, 0, empty_token=True))
    write(base / "error" / "ListRecords.xml", error_page("badArgument", "illegal argument"))
    write(base / "empty" / "ListRecords.xml", error_page("noRecordsMatch", "no records"))
    write(base / "malformed" / "ListRecords.xml", HEADER + "  <ListRecords>\n    <record>\n")
    write(base / "paged" / "manifest.json",
          json.dumps({"records": 25, "pages": 3, "tokens": ["page2", "page3"]}, indent=2) + "\n")


# ---------------------------------------------------------------------------
# Demo repository: 25 full-text papers plus one deleted record and one PDF.

DEMO_SOFTWARE_URLS = {
    "GROBID": "https://github.com/kermitt2/grobid",
    "scikit-learn": "https://github.com/scikit-learn/scikit-learn",
    "Gephi": "https://github.com/gephi/gephi",
}

DEMO_TOPICS = [
    "open access uptake", "thesis metadata quality", "citation of datasets", "research software in theses",
    "repository usage statistics", "peer review timelines", "preprint adoption", "funder mandates",
    "library digitisation", "text mining licences", "data management plans", "author identifiers",
]


def demo_paragraphs(i):
    """Deterministic paper text; most papers mention two packages."""
    topic = DEMO_TOPICS[i % len(DEMO_TOPICS)]
    first = [
        f"This study examines {topic} in a sample of institutional repositories.",
        f"Records were collected during the spring of 2025 and cleaned by two curators.",
    ]
    software = [
        "Full texts were converted to TEI with {N:GROBID} {V:0.8.0} ({U:https://github.com/kermitt2/grobid}).",
        "Classifiers were trained with the {N:scikit-learn} package {V:1.4.2} "
        "({U:https://github.com/scikit-learn/scikit-learn}).",
        "Statistical tests were run in {N:R} {V:4.3.2}.",
        "Survey items were scored in {N:SPSS} {V:29}.",
        "The co-citation graph was drawn with {N:Gephi} {V:0.10.1} ({U:https://github.com/gephi/gephi}).",
        "Descriptive tables were produced in {N:Stata} {V:18}.",
        "Data wrangling was implemented in {N:Python} {V:3.12}.",
    ]
    chosen = [software[i % len(software)], software[(i * 3 + 1) % len(software)]]
    if chosen[0] == chosen[1]:
        chosen = chosen[:1]
    second = " ".join(chosen)
    third = "Limitations and future work are discussed in the final section."
    return first + [second, third]


def generate_demo():
    base = ROOT / "demo"
    if base.exists():
        shutil.rmtree(base)
    records = []
    mentions = 0
    for i in range(1, 26):
        ident = f"oai:demo.repo:paper-{i:03d}"
        title = f"Paper {i}: notes on {DEMO_TOPICS[i % len(DEMO_TOPICS)]}"
        paras = demo_paragraphs(i)
        email = f"author{i:03d}@example.org"
        creators = [f"Author {i:03d} <{email}>", "Second Author"]
        if i % 2:
            xml, _, gold = tei_document(title, paras, [], [f"Author {i:03d}"])
            fname = f"paper-{i:03d}.xml"
            write(base / "oai" / "files" / fname, xml)
        else:
            body, gold = text_document(paras)
            fname = f"paper-{i:03d}.txt"
            write(base / "oai" / "files" / fname, body)
        mentions += len(gold)
        records.append(oai_record(ident, title, creators,
                                  [f"https://doi.org/10.5555/demo.{i:03d}",
                                   f"http://fixture.invalid/oai/files/{fname}"],
                                  datestamp=f"2026-02-{(i % 27) + 1:02d}"))
    records.append(oai_record("oai:demo.repo:paper-026", "", [], [], deleted=True))
    records.append(oai_record("oai:demo.repo:paper-027", "Scanned report", ["Archivist <arch@example.org>"],
                              ["http://fixture.invalid/oai/files/paper-027.pdf"]))
    write(base / "oai" / "files" / "paper-027.pdf", b"%PDF-1.4\n% fixture\n")

    prefix = ' metadataPrefix="oai_dc"'
    write(base / "oai" / "ListRecords.xml", list_records_page(records[:15], prefix, "demo2", 27, 0))
    write(base / "oai" / "demo2.xml", list_records_page(records[15:], ' resumptionToken="demo2"', None, 27, 15,
                                                        empty_token=True))
    write(base / "gazetteer.tsv", gazetteer_tsv())
    write(base / "catalog.tsv", "name\turl\tpublisher\n" + "".join(
        f"{name}\t{DEMO_SOFTWARE_URLS.get(name, url)}\t{pub}\n"
        for name, _, url, pub in GAZETTEER if url))

    repos = base / "repos"
    grobid = repos / "github.com_kermitt2_grobid"
    write(grobid / "README.md", "# GROBID\n\nMachine learning for extracting scholarly documents.\n")
    write(grobid / "codemeta.json", json.dumps({
        "@context": "https://doi.org/10.5063/schema/codemeta-2.0",
        "@type": "SoftwareSourceCode",
        "name": "GROBID",
        "description": "Machine learning software for extracting information from scholarly documents",
        "license": "Apache-2.0",
        "version": "0.8.0",
        "codeRepository": "https://github.com/kermitt2/grobid",
    }, indent=2) + "\n")
    write(grobid / "gradlew", "#!/bin/sh\necho build\n", executable=True)
    os.symlink("README.md", grobid / "README")
    sk = repos / "github.com_scikit-learn_scikit-learn"
    write(sk / "README.rst", "scikit-learn\n============\n\nMachine learning in Python.\n")
    write(sk / "CITATION.cff", "cff-version: 1.2.0\ntitle: scikit-learn\n"
          "message: If you use scikit-learn, please cite it.\n"
          "abstract: Machine learning in Python\nlicense: BSD-3-Clause\n")
    write(sk / "sklearn" / "__init__.py", '__version__ = "1.4.2"\n')
    gephi = repos / "github.com_gephi_gephi"
    write(gephi / "README.md", "# Gephi\n\nThe open graph viz platform.\n")

    write(base / "config.toml", """# Demo configuration: fixture repository, mock archive.
[harvest]
fixture_dir = "oai"

[extract]
gazetteer = "gazetteer.tsv"
min_confidence = 0.5

[resolve]
threshold = 0.75
catalog = "catalog.tsv"

[archival]
mode = "mock"
polls_until_done = 2
max_polls = 5
repo_metadata_dir = "repos"

[storage]
state_dir = "state"

[server]
listen = "127.0.0.1:8080"
""")
    write(base / "manifest.json", json.dumps({
        "records": 27, "documents": 25, "deleted": 1, "unsupported": 1, "gold_mentions": mentions,
        "pages": 2,
    }, indent=2) + "\n")


def generate_configs():
    base = ROOT / "configs"
    if base.exists():
        shutil.rmtree(base)
    write(base / "missing_gazetteer.toml", """[harvest]
base_url = "http://127.0.0.1:9/oai"

[extract]
gazetteer = "does-not-exist.tsv"
""")
    write(base / "empty_repository.toml", """[harvest]
fixture_dir = "../oai/empty"

[extract]
gazetteer = "../eval/gazetteer.tsv"
""")


if __name__ == "__main__":
    generate_eval()
    generate_oai()
    generate_demo()
    generate_configs()
    print("fixtures written to", ROOT)
