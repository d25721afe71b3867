#!/usr/bin/env python3
"""Authoring aid for the packaged scene fixtures (see notes D10: the tool
never triangulates, so scene files list every simplex explicitly).

Regenerates scenes/*.json deterministically; run from the repo root:
    python3 scripts/make_scenes.py
"""
import json
import math
import os

OUT = os.path.join(os.path.dirname(__file__), "..", "scenes")


def polar_disk(chart, radius, sectors):
    """Mirror of diskChain: two polar triangles per sector; the outer arc of
    the first triangle of sector j is its face 0 (simplex index 2*j)."""
    out = []
    for j in range(sectors):
        a0 = 2 * math.pi * j / sectors
        a1 = 2 * math.pi * (j + 1) / sectors
        out.append({
            "kind": "polar", "chart": chart, "sign": 1.0,
            "center": [0.0, 0.0],
            "R": {"c0": 0.0, "c": [radius, radius]},
            "A": {"c0": a0, "c": [0.0, a1 - a0]},
        })
        out.append({
            "kind": "polar", "chart": chart, "sign": 1.0,
            "center": [0.0, 0.0],
            "R": {"c0": 0.0, "c": [radius, 0.0]},
            "A": {"c0": a0, "c": [a1 - a0, a1 - a0]},
        })
    return out


def p1_triangulation(sectors):
    """P^1 = two unit polar disks; each z-sector outer arc is glued to the
    matching w-sector arc through w = 1/z (angle reversal pairs sector j
    with sector sectors-1-j)."""
    simplices = polar_disk("z", 1.0, sectors) + polar_disk("w", 1.0, sectors)
    incidence = []
    for j in range(sectors):
        incidence.append({
            "a": 2 * j, "face_a": 0,
            "b": 2 * sectors + 2 * ((sectors - 1 - j) % sectors), "face_b": 0,
            "transition_b_to_a": ["z1^-1"],
        })
    return {"simplices": simplices, "incidence": incidence}


def p1_transitions():
    return [
        {"from": "w", "to": "z", "map": ["z1^-1"],
         "overlap": [{"chart": "w", "center": [0, 0], "r0": 0.5, "r1": 1.0}]},
        {"from": "z", "to": "w", "map": ["z1^-1"],
         "overlap": [{"chart": "z", "center": [0, 0], "r0": 1.0, "r1": 2.0}]},
    ]


def annulus(chart, r0, r1):
    return [{"chart": chart, "center": [0, 0], "r0": r0, "r1": r1}]


def p1_od():
    return {
        "schema": 1,
        "name": "p1_od",
        "description": "P^1 with the line bundle O(d); chern --q 1 "
                       "integrates to d, cech verify localizes it.",
        "params": {"d": 2},
        "charts": [{"id": "z", "n": 1}, {"id": "w", "n": 1}],
        "transitions": p1_transitions(),
        "bundle": {
            "rank": 1,
            "g": [
                {"from": "w", "to": "z", "matrix": [["z1^${-d}"]]},
                {"from": "z", "to": "w", "matrix": [["z1^${-d}"]]},
            ],
        },
        "sections": {"rank": 1,
                     "comps": {"z": [["z1^${d}"]], "w": [["1"]]}},
        "v0": {"z": annulus("z", 0.25, 4.0), "w": annulus("w", 0.0, 4.0)},
        "connections": {"c1": {"z": "zero", "w": "zero"}},
        "covering": {
            "zones": [{"chart": "z", "center": [0, 0],
                       "r_in": 0.3, "r_out": 0.95, "inner_set": 1}],
            "defaults": {"w": 0},
            "profile": "standard",
        },
        "honeycomb": {"cells": [{"chart": "z", "center": [0, 0], "r": 0.5}]},
        "triangulation": p1_triangulation(8),
        "expected": {
            "chern": {"value": "${d}", "tol": 1e-6},
            "cech": {"value": "${d}", "tol": 2e-6},
        },
    }


def tp1_vector_field():
    return {
        "schema": 1,
        "name": "tp1_vector_field",
        "description": "Tangent bundle of P^1 with the vector field "
                       "s = z d/dz; Poincare-Hopf: locals (1, 1), global 2.",
        "charts": [{"id": "z", "n": 1}, {"id": "w", "n": 1}],
        "transitions": p1_transitions(),
        "bundle": {
            "rank": 1,
            "g": [
                {"from": "w", "to": "z", "matrix": [["(0-1)*z1^-2"]]},
                {"from": "z", "to": "w", "matrix": [["(0-1)*z1^-2"]]},
            ],
        },
        "sections": {"rank": 1,
                     "comps": {"z": [["z1"]], "w": [["0-z1"]]}},
        "v0": {"z": annulus("z", 0.25, 4.0), "w": annulus("w", 0.25, 4.0)},
        "connections": {"c1": {"z": "zero", "w": "zero"}},
        "covering": {
            "zones": [
                {"chart": "z", "center": [0, 0],
                 "r_in": 0.3, "r_out": 0.95, "inner_set": 1},
                {"chart": "w", "center": [0, 0],
                 "r_in": 0.3, "r_out": 0.95, "inner_set": 1},
            ],
            "defaults": {},
            "profile": "standard",
        },
        "honeycomb": {"cells": [
            {"chart": "z", "center": [0, 0], "r": 0.5},
            {"chart": "w", "center": [0, 0], "r": 0.5},
        ]},
        "triangulation": p1_triangulation(8),
        "bm_index": {"f": ["z1"], "radii": [0.5, 1.0, 2.0], "segments": 16},
        "expected": {
            "residue-theorem": {"value": 2, "tol": 1e-6, "locals": [1, 1]},
            "chern": {"value": 2, "tol": 1e-6},
            "residue-index": {"index": 1},
        },
    }


def linear_foliation():
    return {
        "schema": 1,
        "name": "linear_foliation",
        "description": "Linear foliation 3 h d/dh + 2 y d/dy tangent to "
                       "{h = 0}; Camacho-Sad residue lambda/mu = 3/2.",
        "charts": [{"id": "y", "n": 1}],
        "foliation": {
            "a": "3",
            "b": "2*z2",
            "link": {"chart": "y", "center": [0, 0],
                     "radius": 1.0, "segments": 16},
        },
        "expected": {"camacho-sad": {"value": 1.5, "tol": 1e-8}},
    }


def bloom_herrera():
    return {
        "schema": 1,
        "name": "bloom_herrera",
        "description": "Bloom-Herrera example: omega = z1 dz2 on the image "
                       "of z -> (z^5, z^6+z^7); the primitive is not a "
                       "series in the pullback algebra from degree 13 on.",
        "charts": [{"id": "x", "n": 1}],
        "extendability": {
            "omega": "z1*dz2",
            "map": ["z1^5", "z1^6+z1^7"],
        },
        "expected": {"bloom-herrera": {"obstruction_degree": 13}},
    }


def torus_area():
    # flat torus C/(Z + iZ): unit square split along the diagonal, with the
    # opposite edges glued by the translations z+1 and z-i
    t0 = {"kind": "affine", "chart": "t", "sign": 1.0,
          "verts": [[[0, 0]], [[1, 0]], [[1, 1]]]}
    t1 = {"kind": "affine", "chart": "t", "sign": 1.0,
          "verts": [[[0, 0]], [[1, 1]], [[0, 1]]]}
    incidence = [
        # shared diagonal (0, 1+i)
        {"a": 0, "face_a": 1, "b": 1, "face_b": 2},
        # bottom (0,1) ~ top (i,1+i), top mapped down by z - i
        {"a": 0, "face_a": 2, "b": 1, "face_b": 0,
         "transition_b_to_a": ["z1-i"]},
        # right (1,1+i) ~ left (0,i), left mapped over by z + 1
        {"a": 0, "face_a": 0, "b": 1, "face_b": 1,
         "transition_b_to_a": ["z1+1"]},
    ]
    return {
        "schema": 1,
        "name": "torus_area",
        "description": "Flat torus C/(Z+iZ) with the area form "
                       "(i/2) dz ^ dzbar; cech verify integrates area 1 "
                       "through the trivial single-chart covering.",
        "charts": [{"id": "t", "n": 1}],
        "covering": {"zones": [], "defaults": {"t": 0},
                     "profile": "standard"},
        "honeycomb": {"cells": []},
        "triangulation": {"simplices": [t0, t1], "incidence": incidence},
        "global_form": {"t": "(i/2)*dz1^dzbar1"},
        "expected": {"cech": {"value": 1, "tol": 1e-9}},
    }


def main():
    os.makedirs(OUT, exist_ok=True)
    for scene in (p1_od(), tp1_vector_field(), linear_foliation(),
                  bloom_herrera(), torus_area()):
        path = os.path.join(OUT, scene["name"] + ".json")
        with open(path, "w") as f:
            json.dump(scene, f, indent=2)
            f.write("\n")
        print("wrote", os.path.normpath(path))


if __name__ == "__main__":
    main()
