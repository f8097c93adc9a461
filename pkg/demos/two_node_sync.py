"""Two nodes, one schedule: catching up, and settling a fork the same way."""
from campuschain import consensus, ledger, wallet
from campuschain.consensus import GenesisConfig
from campuschain.node import Node

validator = wallet.generate_keypair(seed=41)
student = wallet.generate_keypair(seed=42)
config = GenesisConfig(validators=(validator.address,), chain_id="sync-demo")

alpha = Node(config, validator_key=validator)
beta = Node(config)          # same genesis, no sealing key: a follower

for coins in (10, 20, 30):
    alpha.mint(student.address, coins)
    alpha.produce_block()
print("alpha height", alpha.height, "| beta height", beta.height)

adopted, reason = beta.receive_chain(alpha.chain)
print("beta pulls alpha's chain:", reason,
      "| heights now", alpha.height, "and", beta.height)

# Manufacture a fork: the same slot honestly sealed twice with different
# payloads. Whichever tip hash sorts lower wins, on every node, with no
# extra round trips.
base = list(alpha.chain)
def head(amount):
    tx = ledger.make_mint(validator, student.address, amount, nonce=3,
                          timestamp=base[-1].header.timestamp + 1)
    return consensus.seal_block(config, validator, base[-1], [tx],
                                timestamp=base[-1].header.timestamp + 1)

left, right = base + [head(5)], base + [head(7)]
print("\nleft tip ", left[-1].hash)
print("right tip", right[-1].hash)

alpha.receive_chain(left)
beta.receive_chain(right)
print("before exchange, tips differ:", alpha.tip.hash != beta.tip.hash)

alpha.receive_chain(beta.chain)
beta.receive_chain(alpha.chain)
winner = consensus.fork_choice(config, left, right)
print("after exchange, both sit on", alpha.tip.hash[:16],
      "| agreed:", alpha.tip.hash == beta.tip.hash == winner[-1].hash)
print("balances agree:", alpha.state.to_json() == beta.state.to_json())
