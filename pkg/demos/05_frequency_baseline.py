# The frequency baseline, and why the gate threshold matters.
#
# Before distance-based scoring, a common originality proxy was pure
# frequency: O = 1 - n/m, where n of the m ideas in a session are "similar".
# It needs no reference corpus, but it cannot say HOW different an idea is -
# which is exactly what the per-construct distances add.

from sapphire_novelty import OScoreInput, o_score, rank_current_problems
from sapphire_novelty.data import load_case_study

# Three of five current kettle problems repeat the spilling theme:
print("O score, 3 similar of 5:", o_score(OScoreInput(n=3, m=5)))
# Every idea novel / every idea a repeat:
print("O score, 0 similar of 5:", o_score(OScoreInput(n=0, m=5)))
print("O score, 5 similar of 5:", o_score(OScoreInput(n=5, m=5)))

# The action gate decides which pairs are comparable at all. Raising the
# threshold prunes pairs; with the bundled fixture all Action phrases are
# identical (similarity 1.0), so even a threshold of 1.0 keeps every pair.
past, current, backend = load_case_study()
for threshold in (0.7, 1.0):
    report = rank_current_problems(past, current, backend, threshold=threshold)
    ranked = [(entry.rank, entry.current_id) for entry in report.ranked]
    print(f"threshold {threshold}: ranked {ranked}, unmatched {len(report.unmatched)}")
