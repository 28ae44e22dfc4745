"""
Generator kinds and the parameters each one needs
"""

# parameters: expression strings; constants: plain numbers
GENERATOR_KINDS = {
    "explicit": {
        "parameters": ("x", "w1", "w2"),
        "constants": (),
        "description": "x and the basis columns as comma-separated expression triples",
    },
    "extendable-normal": {
        "parameters": ("b", "h", "l", "r"),
        "constants": (),
        "description": "rank-1 frontal with extendable normal curvature, x = (u, b, c)",
    },
    "rank1-front": {
        "parameters": ("lambda_hat", "f1", "f2"),
        "constants": (),
        "description": "wavefront near a rank-1 singularity from lambda_hat(w, z), f1(w), f2(w)",
    },
    "rank1-from-h": {
        "parameters": ("h",),
        "constants": (),
        "description": "rank-1 wavefront x = (u, -h_v, c) with lambda = -h_vv",
    },
    "vanishing-K": {
        "parameters": ("r1", "r2"),
        "constants": ("c1", "c2"),
        "description": "ruled wavefront with K = 0 from r1(v), r2(v)",
    },
    "extendable-K-wave": {
        "parameters": ("h1", "h2"),
        "constants": ("c",),
        "description": "h_uu + c h_vv = 0 with c < 0, h = h1(v - sqrt(-c) u) + h2(v + sqrt(-c) u)",
    },
    "extendable-K-laplace": {
        "parameters": ("F",),
        "constants": ("c",),
        "description": "h_uu + c h_vv = 0 with c > 0, h = F(u, v / sqrt(c)) for harmonic F",
    },
    "rank0-front": {
        "parameters": ("h",),
        "constants": (),
        "description": "wavefront near a rank-0 singularity, x = (h_u, h_v, c)",
    },
    "false-singularity": {
        "parameters": ("immersion", "m1", "m2"),
        "optional": ("phi",),
        "constants": (),
        "description": "y o m for a catalog immersion y (graph of phi or unit sphere chart)",
    },
    "rank1-normalized": {
        "parameters": (),
        "constants": (),
        "base": "rank1-front",
        "description": "rank1-front base with w^2 added to the third coordinate",
    },
}

IMMERSIONS = ("graph", "sphere")


def required_parameters(kind: str):
    return GENERATOR_KINDS[kind]["parameters"]


def optional_parameters(kind: str):
    return GENERATOR_KINDS[kind].get("optional", ())


def required_constants(kind: str):
    return GENERATOR_KINDS[kind]["constants"]
