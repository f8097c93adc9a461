"""Build a tiny chain by hand, then watch verification catch a forgery."""
from campuschain import canonical, consensus, ledger, wallet

# One validator is enough for a demo; the schedule is round robin anyway.
validator = wallet.generate_keypair(seed=1)
alice = wallet.generate_keypair(seed=2)
bob = wallet.generate_keypair(seed=3)
config = consensus.GenesisConfig(validators=(validator.address,), chain_id="demo")

print("validator", validator.address)
print("alice    ", alice.address)
print("bob      ", bob.address)

# Mint coins to alice, then have her pay bob. Every transaction is signed
# over the canonical bytes of its payload, and the id doubles as the digest.
mint = ledger.make_mint(validator, alice.address, 120, nonce=0, timestamp=10)
pay = ledger.make_transfer(alice, bob.address, 45, nonce=0, timestamp=11)
print("\nmint tx", mint.tx_id[:16], "amount", mint.amount)
print("pay  tx", pay.tx_id[:16], "amount", pay.amount)

chain = [consensus.build_genesis(config)]
chain.append(consensus.seal_block(config, validator, chain[-1], [mint], timestamp=10))
chain.append(consensus.seal_block(config, validator, chain[-1], [pay], timestamp=11))

verdict = consensus.verify_chain(config, chain)
print("\nhonest chain verifies:", bool(verdict))

# Serialize like the wire does, flip one byte in the middle of history,
# and try again. The amount sits under the Merkle root and the signature,
# so the forgery has nowhere to hide.
blob = canonical.encode(ledger.chain_to_json(chain))
position = blob.find(b'"amount":45')
forged = blob.replace(b'"amount":45', b'"amount":99')
tampered = ledger.chain_from_json(canonical.decode(forged))
verdict = consensus.verify_chain(config, tampered)
print(f"after editing byte {position}: ok={bool(verdict)} code={verdict.code}",
      f"height={verdict.height}")

# An outsider cannot seal either, even with a perfectly formed block.
mallory = wallet.generate_keypair(seed=666)
try:
    consensus.seal_block(config, mallory, chain[-1], [], timestamp=12)
except Exception as exc:
    print("outsider sealing:", exc)
