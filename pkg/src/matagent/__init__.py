"""matagent: hierarchical ReAct agents for materials informatics.

Subpackages: react (agent loop and composition), llm (completion backends),
mptools (endpoint tool schemas and clients), xtal (crystal geometry),
scor (response-consistency benchmarks), service (streaming chat API).
"""

__version__ = "0.1.0"
