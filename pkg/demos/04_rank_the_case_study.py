# The full pipeline on the bundled electric-kettle case study.
#
# Every current problem is compared with every past problem. A pair is scored
# only if the Action phrases are similar enough (the action gate, default
# threshold 0.7). For each remaining level present on both sides,
# novelty = 1 - similarity; the pair's average novelty is the mean over those
# shared non-Action levels; the average is banded Low [0,0.3) / Medium
# [0.3,0.7) / High [0.7,1] on the two-decimal display value. A current
# problem's headline score is its MINIMUM average over the gated past
# problems - the closest past problem decides how novel it really is.

from sapphire_novelty import assess_pair, rank_current_problems, render_table
from sapphire_novelty.data import load_case_study

past, current, backend = load_case_study()

# The bundled backend is a fixture: every construct pair's similarity is
# pinned in a TSV, so the numbers replay bit-for-bit with no model involved.
ps1, ps3 = past.problems[0], current.problems[0]
assessment = assess_pair(ps1, ps3, backend)
print(f"{ps1.id} vs {ps3.id}")
for level in assessment.included_levels:
    print(
        f"  {level.label:>12}: similarity {assessment.construct_similarity[level]:.3f}"
        f" -> novelty {assessment.construct_novelty[level]:.3f}"
    )
print(f"  average novelty {assessment.average_novelty:.4f} ({assessment.band.label})")

# Ranking the whole current corpus, most novel first.
report = rank_current_problems(past, current, backend)
print()
print(render_table(report))
