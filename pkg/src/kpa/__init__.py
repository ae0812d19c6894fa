"""kpa: a desk-scale RAN simulator published through a unified knowledge API.

Subpackages:
    ran       -- discrete-tick radio access network simulator
    ontology  -- entity schemas, documented methods, relationship graph
    service   -- HTTP knowledge API (live, docs, graph, insights, subscriptions)
    catalog   -- edge AI service catalog and provisioning
    harness   -- deterministic agent harness and scripted scenarios
"""

__version__ = "0.1.0"
