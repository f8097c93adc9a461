"""One term through the REST surface, no network needed.

Drives the FastAPI app in-process with the ASGI test client: register
people, grade research, award the ranklists, run a job, fill a campaign.
The same requests work against a live `campuschain-node` listener.
"""
import warnings

# The bundled test client nags about an httpx rename; not our problem here.
warnings.filterwarnings("ignore", message=".*httpx.*")

from fastapi.testclient import TestClient  # noqa: E402

from campuschain import economy, wallet
from campuschain.api import create_app
from campuschain.consensus import GenesisConfig
from campuschain.node import Node
from campuschain.registry import MemoryStore
from campuschain.service import CampusService

validator = wallet.generate_keypair(seed=51)
ada = wallet.generate_keypair(seed=52)
bo = wallet.generate_keypair(seed=53)

node = Node(GenesisConfig(validators=(validator.address,), chain_id="rest-demo"),
            validator_key=validator, seed=9)
service = CampusService(MemoryStore(), node, accounts=[
    {"subject_id": "ada", "role": "STUDENT", "token": "tok-ada"},
    {"subject_id": "bo", "role": "STUDENT", "token": "tok-bo"},
    {"subject_id": "prof", "role": "FACULTY", "token": "tok-prof"},
    {"subject_id": "sup", "role": "SUPERVISOR", "token": "tok-sup"},
    {"subject_id": "val", "role": "VALIDATOR", "token": "tok-val"},
])
service.register_student("ada", "Ada", "ada@campus.example", ada.address)
service.register_student("bo", "Bo", "bo@campus.example", bo.address)
service.register_faculty("prof", "Prof", "prof@campus.example")
service.register_supervisor("sup", "Sup", "sup@campus.example", None)

client = TestClient(create_app(service))
H = lambda t: {"Authorization": f"Bearer {t}"}

# research: one project, one graded report, one verified publication
pid = client.post("/projects", json={"topic": "solar benches", "student_ids": ["ada", "bo"]},
                  headers=H("tok-prof")).json()["project_id"]
rid = client.post(f"/projects/{pid}/reports", json={"content_ref": "wk1.pdf"},
                  headers=H("tok-ada")).json()["report_id"]
client.post(f"/reports/{rid}/grade", json={"novelty": 9, "effort": 8, "relevance": 10},
            headers=H("tok-prof"))
pub = client.post(f"/projects/{pid}/publications",
                  json={"journal_name": "Campus Letters", "impact_factor": "2.467",
                        "n_authors": 3},
                  headers=H("tok-bo")).json()["publication_id"]
client.post(f"/publications/{pub}/verify", headers=H("tok-prof"))

print("ranklists:")
for kind, ranklist in client.get("/ranklists").json().items():
    for e in ranklist["entries"]:
        print(f"  {kind:12s} #{e['rank']} {e['student_id']:4s} {e['score']}")

award = client.post("/ranklists/award", json={"period": "2026-T2"},
                    headers=H("tok-val")).json()
for m in award["minted"]:
    print(f"awarded {m['amount']:4d} to {m['student_id']} ({m['ranklist']}, rank {m['rank']})")

# one job: post, apply, allocate, bill a week of hours
pos = client.post("/positions", json={"position_type": "canteen", "hourly_rate": 5},
                  headers=H("tok-sup")).json()["position_id"]
client.post(f"/positions/{pos}/apply", headers=H("tok-ada"))
asg = client.post(f"/positions/{pos}/allocate", headers=H("tok-sup")).json()
sheet = client.post(f"/assignments/{asg['assignment_id']}/timesheets",
                    json={"week_start": "2026-03-02", "hours": "7.5"},
                    headers=H("tok-ada")).json()
print(f"\n{asg['student_id']} works {pos}: 7.5h -> {sheet['amount']} coins")

# one campaign: bo raises 120, ada funds it from her award and wages
cid = client.post("/campaigns", json={"title": "Chess club gear", "goal": 120},
                  headers=H("tok-bo")).json()["campaign_id"]
campaign = economy.Campaign.from_json(service.store.get("campaigns", cid))
_, donation = economy.donate(campaign, ada, 120, node.pending_state(),
                             nonce=0, timestamp=1_800_000_000)
closed = client.post(f"/campaigns/{cid}/donate", json=donation.to_json()).json()
print(f"campaign after donation: {closed['campaign']['raised']}/120",
      closed["campaign"]["status"])

for name, kp in (("ada", ada), ("bo", bo)):
    balance = client.get(f"/wallets/{kp.address}/balance").json()["balance"]
    print(f"{name} closes the term with {balance} coins")
print("chain height", client.get("/chain").json()["height"],
      "| every coin accounted:", node.state.conservation_ok())
