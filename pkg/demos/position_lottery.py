"""The campus job lottery: cold start, rating-weighted draws, wage mints."""
from collections import Counter
from decimal import Decimal

from campuschain import positions, wallet
from campuschain.consensus import GenesisConfig
from campuschain.node import Node

applicants = ["ada", "bo", "cy"]

# With fewer than ten rated students for a position type, every applicant
# gets the same chance no matter what anyone thinks of them.
wins = Counter()
for seed in range(3000):
    posting = positions.PositionPosting(
        position_id="milk-run", supervisor_id="sup", position_type="canteen",
        hourly_rate=5,
    )
    wins[positions.allocate(posting, applicants, [], seed=seed).winner] += 1
print("cold start over 3000 draws:", dict(wins))

# Warm mode: ten distinct canteen workers have been rated, so the draw
# tilts toward reputation while the 0.2 exploration share keeps everyone in.
history = [
    positions.RatingRecord(f"vet-{i}", f"old-{i}", "canteen", 5, "sup", 0)
    for i in range(10)
]
history += [
    positions.RatingRecord("ada", "old-a", "canteen", 9, "sup", 0),
    positions.RatingRecord("bo", "old-b", "canteen", 6, "sup", 0),
    positions.RatingRecord("cy", "old-c", "canteen", 3, "sup", 0),
]
print("\nexact draw probabilities:")
for student, p in positions.selection_probabilities(applicants, history).items():
    print(f"  {student:4s} {p}  (~{float(p):.4f})")

wins = Counter()
for seed in range(3000):
    posting = positions.PositionPosting(
        position_id="milk-run", supervisor_id="sup", position_type="canteen",
        hourly_rate=5,
    )
    wins[positions.allocate(posting, applicants, history, seed=seed).winner] += 1
print("warm draws over 3000:", dict(wins))

# A newcomer with no ratings weighs a flat 9 until the first real rating.
print("\nnewcomer weight:", positions.effective_rating("newcomer", []))
print("after one 4:   ",
      positions.effective_rating("newcomer",
                                 [positions.RatingRecord("newcomer", "x", "canteen", 4, "sup", 0)]))

# Wages are validator mints: floor(hours * rate), memo-tagged per week.
validator = wallet.generate_keypair(seed=31)
worker = wallet.generate_keypair(seed=32)
node = Node(GenesisConfig(validators=(validator.address,), chain_id="job-demo"),
            validator_key=validator)
assignment = positions.Assignment(
    assignment_id="asg-1", position_id="milk-run", student_id="ada",
    supervisor_id="sup", position_type="canteen", hourly_rate=5,
    weekly_hour_cap=positions.WEEKLY_HOUR_CAP, started_at=0,
)
sheet = positions.Timesheet(assignment_id="asg-1", week_start="2026-03-02",
                            hours=Decimal("7.5"))
wage = positions.make_wage_mint(validator, worker.address, sheet, assignment,
                                nonce=node.reserve_mint_nonces(1), timestamp=60)
node.submit(wage)
node.produce_block()
print(f"\n7.5h at rate 5 -> {wage.amount} coins, memo {wage.memo}")
print("worker balance:", node.state.balance(worker.address))
