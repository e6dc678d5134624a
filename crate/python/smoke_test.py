"""Smoke test for the burnloc Python module.

Build and install first:  pip install --no-build-isolation ./crates/py
"""

import json

import burnloc

S1 = "curve[H=G;Y=1;act=trivC;w=1,1]"
S2 = "surface[H=G;Y=1;act=trivCxP1;w=1]"
S3 = "jac[H=G;Y=1;act=trivJ]"


def check_structures():
    ctx = burnloc.Context("hyperelliptic-Z2")
    assert ctx.group_order == 2 and ctx.genus == 2, ctx
    assert len(ctx.symbols()) == 5
    assert ctx.structure() == {"free_rank": 1, "torsion": []}
    assert ctx.structure("maximal") == {"free_rank": 1, "torsion": []}
    assert burnloc.Context("nonhyperelliptic-Z2-exotic").structure()["free_rank"] == 2
    assert burnloc.Context("elliptic-Z2").structure() == {"free_rank": 0, "torsion": []}


def check_classes():
    ctx = burnloc.Context("hyperelliptic-Z2")
    for rule, source, vector in ctx.relations():
        assert rule.startswith("B"), rule
        assert ctx.classes_equal(vector, {}), (rule, source)
        assert ctx.phi(vector) == 0
    assert ctx.canonicalize(S1) == S1
    assert ctx.phi({S1: 1, S2: 1, S3: 1}) == -2
    reduced = ctx.reduce({S1: 2, S3: -1})
    assert ctx.reduce(reduced) == reduced
    assert ctx.classes_equal(reduced, {S1: 2, S3: -1})
    assert not ctx.classes_equal(S1, {})
    try:
        ctx.reduce("curve[H=G;Y=1;act=nope;w=1,1]")
    except burnloc.BurnlocError as e:
        message, code = e.args
        assert code == 2 and "nope" in message, e.args
    else:
        raise AssertionError("unknown label accepted")


def check_models():
    expected = {
        "involution-SxP1": -2,
        "three-nodal-cubic": 1,
        "dp6-fibration": -1,
        "quadric-bundle": -1,
    }
    for name, value in expected.items():
        m = burnloc.Model(name)
        report = m.verdict()
        assert report["invariant"] == value == report["phi"], report
        assert report["verdict"].startswith("OBSTRUCTED"), report
        i1, i2, i3 = m.counts()
        assert burnloc.invariant(i1, i2, i3) == value
    exotic = burnloc.Model("conic-bundle-exotic").verdict()
    assert exotic["notes"], exotic

    elliptic = burnloc.Model("elliptic-fixed-curve")
    for center in burnloc.CENTERS:
        model = burnloc.Model("elliptic-empty") if center.endswith("5") else elliptic
        assert model.verify_blowup(center), center


def check_cli():
    code, out, err = burnloc.run(["--json", "structure", "--catalog", "hyperelliptic-Z2"])
    assert code == 0 and not err, (code, err)
    assert json.loads(out) == {"free_rank": 1, "torsion": []}
    code, _, err = burnloc.run(["structure", "--catalog", "no-such-catalog"])
    assert code == 2 and err.startswith("error:"), (code, err)


if __name__ == "__main__":
    check_structures()
    check_classes()
    check_models()
    check_cli()
    print("python smoke test: ok")
