"""Grade reports, verify a publication, rank everyone, mint the rewards."""
from decimal import Decimal

from campuschain import research, wallet
from campuschain.consensus import GenesisConfig
from campuschain.node import Node

# Three students: a project worker, a published author, and an idle one.
ada_rating = research.mentor_rating([
    research.Grade(9, 8, 10).score(),   # 9.0000
    research.Grade(6, 6, 6).score(),    # 6.0000
])
print("ada's project rating:", ada_rating)

paper = research.Publication(
    "Campus Letters", impact_factor=Decimal("2.467"), n_authors=3, verified=True
)
print("bo's publication credit:", research.research_rating(paper))

profiles = [
    research.StudentResearchProfile("ada", project_ratings=(ada_rating,)),
    research.StudentResearchProfile("bo", publications=(paper,)),
    research.StudentResearchProfile("cy"),
]
mentor_list, published_list = research.build_ranklists(profiles)
for ranklist in (mentor_list, published_list):
    print(f"\n{ranklist.kind}")
    for entry in ranklist.entries:
        print(f"  #{entry.rank} {entry.student_id:4s} {entry.score}")

# Rewards are validator mints carrying a period-tagged memo, so the chain
# itself says why every coin exists.
validator = wallet.generate_keypair(seed=21)
wallets = {
    "ada": wallet.generate_keypair(seed=22).address,
    "bo": wallet.generate_keypair(seed=23).address,
    "cy": wallet.generate_keypair(seed=24).address,
}
node = Node(GenesisConfig(validators=(validator.address,), chain_id="rank-demo"),
            validator_key=validator)

print("\naward schedule:", research.DEFAULT_AWARD_SCHEDULE)
for ranklist in (mentor_list, published_list):
    txs = research.award_for_ranklist(
        ranklist, research.DEFAULT_AWARD_SCHEDULE, period="2026-T2",
        wallets=wallets, keypair=validator,
        start_nonce=node.reserve_mint_nonces(len(ranklist.entries)),
        timestamp=50,
    )
    for tx in txs:
        node.submit(tx)
        print(f"  {tx.memo} pays {tx.amount} to {tx.to[:14]}...")
node.produce_block()

for name, address in wallets.items():
    print(f"{name:4s} holds {node.state.balance(address)}")
