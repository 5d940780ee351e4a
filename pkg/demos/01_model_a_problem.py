# Modelling one design problem at the seven SAPPhIRE abstraction levels.
#
# A problem record carries a short phrase per level: Action (what goes wrong,
# mandatory), State Change, Phenomena, Effect, Input, oRgan, Parts. Levels
# below Action may be left out - survey answers rarely fill in all seven.

from sapphire_novelty import (
    ConstructLevel,
    ProblemSapphire,
    Provenance,
    construct_text,
    make_constructs,
    validate_problem,
)

problem = ProblemSapphire(
    id="DEMO-1",
    label="When water overboils it spills out",
    provenance=Provenance.CURRENT,
    source="survey respondent 4",
    context="electric kettle",
    constructs=make_constructs(
        action="spilling of liquid",
        state_change="static to movable liquid",
        phenomena="overboiling of water past the brim",
        input="mains electricity heating the coil",
    ),
)

# validate_problem returns violations as data; an empty list means ok.
print("violations:", validate_problem(problem))

# Absent levels read as None, never as empty text.
for level in ConstructLevel:
    print(f"{level.label:>12}: {construct_text(problem, level)}")

# The invariants catch the usual data-entry slips: ids with spaces, blank
# action phrases, whitespace-only constructs.
broken = ProblemSapphire(
    id="DEMO 2",
    label="broken record",
    provenance=Provenance.CURRENT,
    constructs=make_constructs(action="   "),
)
for violation in validate_problem(broken):
    print("broken:", violation)
