"""Account state, nonce replay protection, and a crowdfunding campaign."""
from campuschain import economy, ledger, wallet
from campuschain.errors import DomainError
from campuschain.node import Node
from campuschain.consensus import GenesisConfig

validator = wallet.generate_keypair(seed=11)
donor = wallet.generate_keypair(seed=12)
club = wallet.generate_keypair(seed=13)
node = Node(GenesisConfig(validators=(validator.address,), chain_id="econ-demo"),
            validator_key=validator)

node.mint(donor.address, 300)
node.produce_block()
print("donor starts with", node.state.balance(donor.address))

# Replaying a transfer is futile: the nonce only fits once.
tx = ledger.make_transfer(donor, club.address, 50, nonce=0, timestamp=20)
node.submit(tx)
node.produce_block()
try:
    node.submit(tx)
except DomainError as exc:
    print("replay refused:", exc.code)

# Supply accounting holds at every block: nothing leaks, nothing appears.
print("minted", node.state.total_minted,
      "== held", node.state.total_balance(),
      "->", node.state.conservation_ok())

# A campaign is a hard-capped bucket. It admits donations only while open,
# refuses anything that would overshoot, and closes exactly at the goal.
campaign = economy.create_campaign(club.address, 200, "New chess boards", "cmp-demo")
for amount in (120, 90, 80):
    nonce = node.pending_state().next_nonce(donor.address)
    try:
        campaign, donation = economy.donate(
            campaign, donor, amount, node.pending_state(), nonce, 100 + nonce)
        node.submit(donation)
        node.produce_block()
        print(f"donated {amount}: raised {campaign.raised}/{campaign.goal}",
              campaign.status)
    except DomainError as exc:
        print(f"donated {amount}: refused, {exc.code} ({exc.message})")

print("club balance on chain:", node.state.balance(club.address))
