"""
Presentations, the corpus and the command line
==============================================

Parse a ring file, run the full pipeline and emit JSON.
"""

import json

from hkmult import PipelineConfig, parse_presentation, run_pipeline
from hkmult.cli import main
from hkmult.corpus import NAMES, corpus_text
from hkmult.pipeline import reports_to_json

##############################################################################
# Rings are plain text.  Every corpus entry is available in that form.

print(NAMES)
text = corpus_text("quadric_A1")
print(text)

##############################################################################
# The pipeline runs every bound, the associativity comparison and the
# certificate deduction.

pres = parse_presentation(text)
cfg = PipelineConfig(e_max=2, seed=1)
rep = run_pipeline(pres, cfg)
print(rep.regularity_class, [(b.bound_id, b.status) for b in rep.bounds])

doc = json.loads(reports_to_json([rep], cfg))
print(doc["reports"][0]["ehk_estimate"])

##############################################################################
# The same is available from the shell as ``hk``; here we call its entry
# point directly.  Exit status 2 would flag a violated bound.

status = main(["corpus", "--only", "two_lines", "--emax", "2"])
print("exit status", status)
