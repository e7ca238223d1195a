"""Command-line interface: ``actforge <verb> ...``.

Monoids and acts are named either by an entry in ``--workspace`` or by a
built-in spec:

  monoids  trivial Z2 Z3 E2 T2 E2^0 Z2^0 Z2xE2 U(Z2,Z2) S3 C3,
           cyclic:n  chain:k  transformations:n  symmetric:n  left-zero:k
  acts     regular:M  trivial:M  free:M:k  natural:T2  natural:S3  small:M:i

Exit codes: 0 success, 1 verification or consequence failure, 2 input
error, 3 size cap exceeded.
"""

from __future__ import annotations

import argparse
import json
import sys

from . import families, workspace as wsmod
from .act import DerivationCertificate, is_generating_set, minimal_generating_set
from .diagonal import (
    diagonal_act,
    diagonal_presentation,
    product_diagonal_presentation,
    rectangular_generating_set,
    regular_presentation,
    square_generating_set,
    zero_extension_generators,
    zero_extension_presentation,
)
from .direct_product import dp_generating_set, dp_presentation
from .errors import ActForgeError, NotConsequence, ValidationError
from .presentation import (
    FreeActElem,
    canonical_presentation,
    is_consequence,
    is_presentation_of,
    presentation_on_generators,
    reduce_presentation,
)
from .wreath import (
    finite_A_fg_N_U,
    is_U_connected,
    left_zero_U,
    reduce_T1,
    wreath_generating_set,
    wreath_presentation,
)


class Builder:
    """Resolves specs and records everything used into an output workspace."""

    def __init__(self, source=None):
        self.src = source
        self.out = wsmod.Workspace()

    # -- monoids ---------------------------------------------------------

    def monoid(self, spec):
        if spec in self.out.monoids:
            return spec, self.out.monoids[spec]
        if self.src is not None and spec in self.src.monoids:
            self._copy(spec)
            return spec, self.out.monoids[spec]
        recipe = _monoid_recipe(spec)
        M = wsmod._run_recipe(self.out, spec, recipe)
        self.out.add_monoid(spec, M, recipe)
        return spec, M

    # -- acts ------------------------------------------------------------

    def act(self, spec):
        if spec in self.out.acts:
            return spec, self.out.acts[spec]
        if self.src is not None and spec in self.src.acts:
            self._copy(spec)
            return spec, self.out.acts[spec]
        kind, _, rest = spec.partition(":")
        if kind == "small":
            mspec, _, idx = rest.rpartition(":")
            mname, M = self.monoid(mspec)
            acts = families.small_acts(mspec)
            try:
                A = acts[int(idx)][1]
            except (ValueError, IndexError):
                raise ValidationError(f"no small act {spec!r} (there are {len(acts)})", spec=spec) from None
            self.out.add_act(spec, A, mname)
            return spec, A
        if kind == "natural":
            mname, _ = self.monoid(rest)
            recipe = {"op": "natural_act", "args": [rest]}
        elif kind in ("regular", "trivial"):
            mname, _ = self.monoid(rest)
            recipe = {"op": f"{'right_regular' if kind == 'regular' else 'trivial'}_act", "args": [{"ref": mname}]}
        elif kind == "free":
            mspec, _, k = rest.rpartition(":")
            mname, _ = self.monoid(mspec)
            recipe = {"op": "free_act", "args": [{"ref": mname}, _int(k, spec)]}
        else:
            raise ValidationError(f"unknown act spec {spec!r}", spec=spec)
        A = wsmod._run_recipe(self.out, spec, recipe)
        if A is None:
            raise ValidationError(f"unknown act spec {spec!r}", spec=spec)
        self.out.add_act(spec, A, mname, recipe)
        return spec, A

    def derived_monoid(self, name, recipe):
        if name not in self.out.monoids:
            self.out.add_monoid(name, wsmod._run_recipe(self.out, name, recipe), recipe)
        return name, self.out.monoids[name]

    def derived_act(self, name, recipe, monoid_name):
        if name not in self.out.acts:
            self.out.add_act(name, wsmod._run_recipe(self.out, name, recipe), monoid_name, recipe)
        return name, self.out.acts[name]

    def _copy(self, name):
        for s in wsmod.SECTIONS:
            if name in self.src.entries[s]:
                entry = self.src.entries[s][name]
                for dep in wsmod._deps(s, entry):
                    if not any(dep in self.out.entries[t] for t in wsmod.SECTIONS):
                        self._copy(dep)
                self.out.entries[s][name] = entry
                for attr in ("monoids", "acts", "presentations", "generating_sets", "certificates"):
                    table = getattr(self.src, attr)
                    if name in table:
                        getattr(self.out, attr)[name] = table[name]
                return


def _int(text, spec):
    try:
        return int(text)
    except ValueError:
        raise ValidationError(f"expected an integer in {spec!r}", spec=spec) from None


_PARAM_MONOIDS = {
    "cyclic": "cyclic_group",
    "chain": "chain_semilattice",
    "transformations": "full_transformation_monoid",
    "symmetric": "symmetric_group",
    "left-zero": "left_zero_monoid",
}


def _monoid_recipe(spec):
    kind, sep, arg = spec.partition(":")
    if sep and kind in _PARAM_MONOIDS:
        return {"op": _PARAM_MONOIDS[kind], "args": [_int(arg, spec)]}
    if spec in families.FAMILY_NAMES or spec == "C3":
        return {"op": "family_monoid", "args": [spec]}
    raise ValidationError(f"unknown monoid spec {spec!r}", spec=spec)


# --- output ----------------------------------------------------------------


class Reporter:
    def __init__(self, as_json):
        self.as_json = as_json
        self.report = {}

    def say(self, text):
        if not self.as_json:
            print(text)

    def set(self, **kw):
        self.report.update(kw)

    def finish(self, code):
        if self.as_json:
            self.report.setdefault("exit_code", code)
            print(json.dumps(self.report, sort_keys=True, ensure_ascii=False))
        return code


def _write(builder, path, rep):
    if path:
        wsmod.save_workspace(builder.out, path)
        rep.say(f"wrote {path}")
        rep.set(out=path)


def _load_source(path):
    return wsmod.load_workspace(path) if path else None


def _need_n(items, n, what):
    if len(items or []) != n:
        raise ValidationError(f"expected {n} {what} argument(s), got {len(items or [])}")
    return items


# --- verbs -----------------------------------------------------------------


def cmd_validate(args, rep):
    ws = wsmod.load_workspace(args.file)
    counts = {s: len(ws.entries[s]) for s in wsmod.SECTIONS}
    rep.set(valid=True, counts=counts)
    rep.say("valid: " + ", ".join(f"{v} {k}" for k, v in counts.items() if v))
    return 0


def cmd_construct(args, rep):
    b = Builder(_load_source(args.workspace))
    kind = args.kind
    if kind == "diagonal":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        name = args.name or f"diag({mname})"
        b.derived_act(name, {"op": "diagonal_act", "args": [{"ref": mname}]}, mname)
    elif kind == "dp":
        (an, A), (bn, B) = [b.act(s) for s in _need_n(args.act, 2, "--act")]
        name = args.name or f"{an}x{bn}"
        b.derived_act(name, {"op": "direct_product_act", "args": [{"ref": an}, {"ref": bn}]}, b.out.monoid_name_of(A))
    elif kind in ("wreath", "wreath-monoid"):
        (an, A), (bn, B) = [b.act(s) for s in _need_n(args.act, 2, "--act")]
        mname, nname = b.out.monoid_name_of(A), b.out.monoid_name_of(B)
        wname = f"W({mname},{nname}|{an})"
        b.derived_monoid(wname, {"op": "wreath_monoid", "args": [{"ref": mname}, {"ref": nname}, {"ref": an}]})
        name = wname
        if kind == "wreath":
            name = args.name or f"{an}wr{bn}"
            b.derived_act(name, {"op": "wreath_act", "args": [{"ref": an}, {"ref": bn}]}, wname)
    elif kind == "m0":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        name = args.name or f"{mname}^0"
        b.derived_monoid(name, {"op": "adjoin_zero", "args": [{"ref": mname}]})
    elif kind == "attach":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        (an, A), = [b.act(s) for s in _need_n(args.act, 1, "--act")]
        name = args.name or f"U({mname},{an})"
        b.derived_monoid(name, {"op": "attach_act_monoid", "args": [{"ref": mname}, {"ref": an}]})
    elif kind == "product-monoid":
        (mname, M), (nname, N) = [b.monoid(s) for s in _need_n(args.monoid, 2, "--monoid")]
        name = args.name or f"{mname}x{nname}"
        b.derived_monoid(name, {"op": "direct_product_monoid", "args": [{"ref": mname}, {"ref": nname}]})
    else:
        raise ValidationError(f"unknown construction {kind!r}")
    obj = b.out.acts.get(name) or b.out.monoids.get(name)
    size = obj.size if name in b.out.acts else obj.order
    rep.set(constructed=name, size=size)
    rep.say(f"{name}: {'act' if name in b.out.acts else 'monoid'} with {size} elements")
    _write(b, args.out, rep)
    return 0


def _labels(A, elems):
    return [A.label(a) for a in elems]


def cmd_generate(args, rep):
    b = Builder(_load_source(args.workspace))
    kind = args.kind
    if kind == "minimal":
        (an, A), = [b.act(s) for s in _need_n(args.act, 1, "--act")]
        gs = minimal_generating_set(A)
        target, elems, extra = an, gs.elems, {"optimal": gs.optimal}
    elif kind == "diagonal":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        g = rectangular_generating_set(M) if args.rectangular else square_generating_set(M)
        target = f"diag({mname})"
        b.derived_act(target, {"op": "diagonal_act", "args": [{"ref": mname}]}, mname)
        elems, extra = g.pairs(M.order), {"U": list(g.U), "V": list(g.V)}
    elif kind == "m0":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        M0, Z, pairs = zero_extension_generators(M, square_generating_set(M).U)
        b.derived_monoid(f"{mname}^0", {"op": "adjoin_zero", "args": [{"ref": mname}]})
        target = f"diag({mname}^0)"
        b.derived_act(target, {"op": "diagonal_act", "args": [{"ref": f"{mname}^0"}]}, f"{mname}^0")
        elems, extra = Z, {}
    elif kind in ("dp", "wreath"):
        (an, A), (bn, B) = [b.act(s) for s in _need_n(args.act, 2, "--act")]
        X, Y = minimal_generating_set(A).elems, minimal_generating_set(B).elems
        if kind == "dp":
            g = rectangular_generating_set(A.base)
            setup = dp_generating_set(A, X, B, Y, g.U, g.V)
            target = f"{an}x{bn}"
            b.derived_act(target, {"op": "direct_product_act", "args": [{"ref": an}, {"ref": bn}]}, b.out.monoid_name_of(A))
            elems = setup.Z
            extra = {"provenance": [list(p) for p in setup.provenance], "U": list(g.U), "V": list(g.V)}
        else:
            mname, nname = b.out.monoid_name_of(A), b.out.monoid_name_of(B)
            wname = f"W({mname},{nname}|{an})"
            b.derived_monoid(wname, {"op": "wreath_monoid", "args": [{"ref": mname}, {"ref": nname}, {"ref": an}]})
            target = f"{an}wr{bn}"
            b.derived_act(target, {"op": "wreath_act", "args": [{"ref": an}, {"ref": bn}]}, wname)
            elems, extra = wreath_generating_set(A, X, B, Y), {}
    else:
        raise ValidationError(f"unknown generating-set kind {kind!r}")
    act = b.out.acts[target]
    ok = is_generating_set(act, elems)
    name = args.name or f"gens({target})"
    b.out.add_generating_set(name, target, elems)
    rep.set(act=target, elements=list(elems), labels=_labels(act, elems), generates=ok, **extra)
    rep.say(f"{target}: {len(elems)} generators {_labels(act, elems)}; generates: {ok}")
    _write(b, args.out, rep)
    return 0 if ok else 1


def _present(args, b):
    """Build the requested presentation; returns (P, monoid name, act name, assign)."""
    kind = args.kind
    if kind == "act":
        (an, A), = [b.act(s) for s in _need_n(args.act, 1, "--act")]
        if args.canonical:
            P, assign = canonical_presentation(A)
        else:
            P, assign = presentation_on_generators(A, minimal_generating_set(A).elems)
        if args.reduce:
            P = reduce_presentation(P, A, assign)
        return P, b.out.monoid_name_of(A), an, assign
    if kind == "diagonal":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        g = rectangular_generating_set(M) if args.rectangular else square_generating_set(M)
        P, assign = diagonal_presentation(M, g.U, g.V, reduce=args.reduce)
        target, _ = b.derived_act(f"diag({mname})", {"op": "diagonal_act", "args": [{"ref": mname}]}, mname)
        return P, mname, target, assign
    if kind == "m0":
        (mname, M), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        U = square_generating_set(M).U
        P_diag, a_diag = diagonal_presentation(M, U)
        P_M, a_M = regular_presentation(M, U)
        M0, P, Z = zero_extension_presentation(M, P_diag, a_diag, P_M, a_M)
        if args.reduce:
            P = reduce_presentation(P, diagonal_act(M0), Z)
        zname, _ = b.derived_monoid(f"{mname}^0", {"op": "adjoin_zero", "args": [{"ref": mname}]})
        target, _ = b.derived_act(f"diag({zname})", {"op": "diagonal_act", "args": [{"ref": zname}]}, zname)
        return P, zname, target, Z
    if kind == "product-diagonal":
        (mname, M), (nname, N) = [b.monoid(s) for s in _need_n(args.monoid, 2, "--monoid")]
        U, V = square_generating_set(M).U, square_generating_set(N).U
        P_M, a_M = diagonal_presentation(M, U)
        P_N, a_N = diagonal_presentation(N, V)
        MN, P, Z, _, _ = product_diagonal_presentation(M, N, P_M, a_M, P_N, a_N, literal=args.literal, verify=False)
        pname, _ = b.derived_monoid(f"{mname}x{nname}", {"op": "direct_product_monoid", "args": [{"ref": mname}, {"ref": nname}]})
        target, _ = b.derived_act(f"diag({pname})", {"op": "diagonal_act", "args": [{"ref": pname}]}, pname)
        return P, pname, target, Z
    if kind in ("dp", "wreath"):
        (an, A), (bn, B) = [b.act(s) for s in _need_n(args.act, 2, "--act")]
        P_A, aA = presentation_on_generators(A, minimal_generating_set(A).elems)
        P_B, aB = presentation_on_generators(B, minimal_generating_set(B).elems)
        P_A, P_B = reduce_presentation(P_A, A, aA), reduce_presentation(P_B, B, aB)
        mname = b.out.monoid_name_of(A)
        if kind == "dp":
            g = square_generating_set(A.base)
            P_diag, a_diag = diagonal_presentation(A.base, g.U, g.V)
            setup, P, assign, _ = dp_presentation(P_A, aA, A, P_B, aB, B, P_diag, a_diag, literal=args.literal, verify=False)
            target, _ = b.derived_act(f"{an}x{bn}", {"op": "direct_product_act", "args": [{"ref": an}, {"ref": bn}]}, mname)
        else:
            nname = b.out.monoid_name_of(B)
            w = wreath_presentation(P_A, aA, A, P_B, aB, B, verify=False)
            mname, _ = b.derived_monoid(f"W({mname},{nname}|{an})",
                                        {"op": "wreath_monoid", "args": [{"ref": mname}, {"ref": nname}, {"ref": an}]})
            target, _ = b.derived_act(f"{an}wr{bn}", {"op": "wreath_act", "args": [{"ref": an}, {"ref": bn}]}, mname)
            P, assign = w.presentation, w.assign
        if args.reduce:
            P = reduce_presentation(P, b.out.acts[target], assign)
        return P, mname, target, assign
    raise ValidationError(f"unknown presentation kind {kind!r}")


def _report_verdict(rep, pname, verdict, P):
    rep.say(f"{pname}: {len(P.gen_labels)} generators, {len(P.relations)} relations; "
            f"{'verified' if verdict else 'NOT verified: ' + verdict.reason}")
    if not verdict and verdict.witness is not None:
        w1, w2 = (FreeActElem(*w) for w in verdict.witness)
        rep.say(f"  witness: {P.format_elem(w1)} vs {P.format_elem(w2)}; "
                f"closure classes {verdict.closure_classes}, kernel classes {verdict.kernel_classes}")


def cmd_present(args, rep):
    b = Builder(_load_source(args.workspace))
    P, mname, target, assign = _present(args, b)
    name = args.name or f"P({target})"
    b.out.add_presentation(name, P, mname, target, assign)
    verdict = is_presentation_of(P, b.out.acts[target], assign)
    _report_verdict(rep, name, verdict, P)
    rep.set(presentation=name, generators=P.num_gens, relations=len(P.relations), verdict=verdict.to_json())
    _write(b, args.out, rep)
    return 0 if verdict else 1


def _pick_presentations(ws, name):
    if name is not None:
        if name not in ws.presentations:
            raise ValidationError(f"no presentation named {name!r}", name=name)
        return [name]
    return sorted(ws.presentations)


def cmd_verify(args, rep):
    ws = wsmod.load_workspace(args.file)
    results = {}
    code = 0
    names = _pick_presentations(ws, args.name)
    if not names:
        raise ValidationError("workspace has no presentations")
    for pname in names:
        P, assign = ws.presentations[pname]
        act_name = ws.entries["presentations"][pname].get("act")
        if act_name is None:
            rep.say(f"{pname}: no target act, skipped")
            continue
        verdict = is_presentation_of(P, ws.acts[act_name], assign)
        _report_verdict(rep, pname, verdict, P)
        results[pname] = verdict.to_json()
        if not verdict:
            code = 1
    rep.set(results=results)
    return code


def _parse_elem(P, text):
    """'x.m' with x a generator label or index and m a monoid label or index."""
    gen_s, dot, elem_s = text.rpartition(".")
    if not dot:
        raise ValidationError(f"expected 'generator.element', got {text!r}", text=text)
    labels = [str(g) for g in P.gen_labels]
    M = P.monoid
    if gen_s.startswith("#"):
        gen = _int(gen_s[1:], text)
    elif gen_s in labels:
        gen = labels.index(gen_s)
    else:
        gen = _int(gen_s, text)
    mlabels = [M.label(i) for i in range(M.order)]
    elem = mlabels.index(elem_s) if elem_s in mlabels else _int(elem_s, text)
    if not (0 <= gen < P.num_gens and 0 <= elem < M.order):
        raise ValidationError(f"{text!r} is out of range", text=text)
    return FreeActElem(gen, elem)


def _parse_map(text, what):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip() != "")
    except ValueError:
        raise ValidationError(f"bad {what} {text!r}; expected comma-separated integers") from None


def cmd_connect(args, rep):
    if args.replay:
        ws = wsmod.load_workspace(args.replay)  # loading replays every certificate
        rep.set(replayed=sorted(ws.certificates))
        rep.say(f"replayed {len(ws.certificates)} certificate(s): all valid")
        return 0
    if args.maps:
        b = Builder(_load_source(args.workspace))
        (nname, N), = [b.monoid(s) for s in _need_n(args.monoid, 1, "--monoid")]
        U = [_parse_map(u, "map") for u in (args.U or "").split(";") if u.strip()]
        theta, phi = _parse_map(args.theta, "theta"), _parse_map(args.phi, "phi")
        if len(theta) != len(phi) or any(len(u) != len(theta) for u in U):
            raise ValidationError("maps have different lengths")
        for v in theta + phi + tuple(x for u in U for x in u):
            if not 0 <= v < N.order:
                raise ValidationError(f"map value {v} out of range")
        cert = is_U_connected(theta, phi, U, args.at, N)
        if cert is None:
            raise NotConsequence(f"{theta} is not ({args.at})-connected to {phi}", theta=theta, phi=phi)
        entry = {"kind": "connectedness", "monoid": nname, "U": [list(u) for u in U], "at": args.at,
                 "theta": list(theta), "phi": list(phi), "steps": cert.to_json()}
    else:
        if not args.presentation:
            raise ValidationError("connect needs --presentation, --maps or --replay")
        src = wsmod.load_workspace(args.presentation)
        pname = _pick_presentations(src, args.name)
        if len(pname) != 1:
            raise ValidationError("workspace holds several presentations; pick one with --name")
        pname = pname[0]
        b = Builder(src)
        b._copy(pname)
        P, _ = src.presentations[pname]
        w1, w2 = _parse_elem(P, args.lhs), _parse_elem(P, args.rhs)
        cert = is_consequence(P, w1, w2)
        if cert is None:
            raise NotConsequence(f"{args.lhs} = {args.rhs} is not a consequence of the relations",
                                 lhs=tuple(w1), rhs=tuple(w2))
        entry = {"kind": "derivation", "presentation": pname, "lhs": wsmod.elem_json(w1),
                 "rhs": wsmod.elem_json(w2), "steps": cert.to_json()}
        _print_derivation(rep, P, w1, cert)
    name = args.name_out or "certificate"
    b.out.add_certificate(name, entry)
    if not wsmod.replay_entry(b.out, entry):
        raise AssertionError("fresh certificate failed to replay")
    rep.set(certificate=entry)
    rep.say(f"certificate with {len(entry['steps'])} step(s)")
    if args.maps:
        for s in entry["steps"]:
            rep.say(f"  {s['mode']} u#{s['u']} psi={s['psi']}")
    _write(b, args.out, rep)
    return 0


def _print_derivation(rep, P, start, cert):
    M = P.monoid
    pairs = P.relations
    cur = start
    rep.say(f"  {P.format_elem(cur)}")
    for s in DerivationCertificate.from_json(cert.to_json()).steps:
        r = pairs[s.pair]
        p, q = (r.lhs, r.rhs) if s.forward else (r.rhs, r.lhs)
        cur = q.times(M, s.mult)
        rep.say(f"  = {P.format_elem(cur)}    (relation {s.pair}{'' if s.forward else ' reversed'}, times {M.label(s.mult)})")


def cmd_reduce(args, rep):
    if args.wreath:
        b = Builder(_load_source(args.workspace))
        (an, A), (bn, B) = [b.act(s) for s in _need_n(args.act, 2, "--act")]
        P_A, aA = presentation_on_generators(A, minimal_generating_set(A).elems)
        P_B, aB = presentation_on_generators(B, minimal_generating_set(B).elems)
        w = wreath_presentation(P_A, aA, A, P_B, aB, B, verify=False)
        N = B.base
        if args.U == "fg":
            U = finite_A_fg_N_U(A, N, N.generators, aA)
        elif args.U.startswith("left-zero"):
            _, _, z = args.U.partition(":")
            zeros = [z for z in range(N.order) if all(N.table[z][n] == z for n in range(N.order))]
            z = _int(z, args.U) if z else (zeros[0] if zeros else 0)
            U = left_zero_U(A, aA, N, z)
        else:
            raise ValidationError(f"unknown --U choice {args.U!r}")
        red, certs = reduce_T1(w, U, verify=False)
        mname, nname = b.out.monoid_name_of(A), b.out.monoid_name_of(B)
        wname, _ = b.derived_monoid(f"W({mname},{nname}|{an})",
                                    {"op": "wreath_monoid", "args": [{"ref": mname}, {"ref": nname}, {"ref": an}]})
        target, _ = b.derived_act(f"{an}wr{bn}", {"op": "wreath_act", "args": [{"ref": an}, {"ref": bn}]}, wname)
        P = red.presentation
        name = args.name or f"P'({target})"
        b.out.add_presentation(name, P, wname, target, red.assign)
        verdict = is_presentation_of(P, red.act, red.assign)
        rep.say(f"T1: {len(w.t1)} -> {len(red.t1)} relations (|U| = {len(U)}); hypothesis checked for "
                f"{len(certs)} non-constant (θ, x)")
        _report_verdict(rep, name, verdict, P)
        rep.set(t1_before=len(w.t1), t1_after=len(red.t1), U=[list(u) for u in U], verdict=verdict.to_json())
        _write(b, args.out, rep)
        return 0 if verdict else 1
    if not args.file:
        raise ValidationError("reduce needs a workspace file or --wreath")
    src = wsmod.load_workspace(args.file)
    names = _pick_presentations(src, args.name)
    if len(names) != 1:
        raise ValidationError("workspace holds several presentations; pick one with --name")
    pname = names[0]
    entry = src.entries["presentations"][pname]
    if "act" not in entry:
        raise ValidationError(f"{pname} has no target act to reduce against")
    b = Builder(src)
    b._copy(entry["act"])
    P, assign = src.presentations[pname]
    A = src.acts[entry["act"]]
    R = reduce_presentation(P, A, assign)
    b.out.add_presentation(pname, R, entry["monoid"], entry["act"], assign)
    verdict = is_presentation_of(R, A, assign)
    rep.say(f"{pname}: {len(P.relations)} -> {len(R.relations)} relations")
    _report_verdict(rep, pname, verdict, R)
    rep.set(before=len(P.relations), after=len(R.relations), verdict=verdict.to_json())
    _write(b, args.out, rep)
    return 0 if verdict else 1


def cmd_suite(args, rep):
    from .suite import run_suite

    results = run_suite(family=args.family, only=args.only, seed=args.seed,
                        report=None if rep.as_json else (lambda r: print(r.line(), flush=True)))
    passed = all(r.passed for r in results)
    rep.set(criteria=[r.to_json() for r in results], passed=passed)
    rep.say(f"{sum(r.passed for r in results)}/{len(results)} criteria passed")
    return 0 if passed else 1


def build_parser():
    p = argparse.ArgumentParser(prog="actforge", description="Finite monoid acts, presentations and certificates.")
    p.add_argument("--json", action="store_true", help="print a machine-readable report")
    sub = p.add_subparsers(dest="verb", required=True)

    v = sub.add_parser("validate", help="load and re-check a workspace")
    v.add_argument("file")

    def common(q, kinds):
        q.add_argument("kind", choices=kinds)
        q.add_argument("--monoid", action="append", help="monoid spec or workspace name (repeatable)")
        q.add_argument("--act", action="append", help="act spec or workspace name (repeatable)")
        q.add_argument("--workspace", help="workspace to resolve names from")
        q.add_argument("--name", help="name of the produced entry")
        q.add_argument("--out", help="write the resulting workspace here")

    c = sub.add_parser("construct", help="build a named construction")
    common(c, ["diagonal", "dp", "wreath", "m0", "attach", "wreath-monoid", "product-monoid"])

    g = sub.add_parser("generate", help="emit a verified generating set")
    common(g, ["minimal", "diagonal", "m0", "dp", "wreath"])
    g.add_argument("--rectangular", action="store_true", help="smallest U×V instead of U×U")

    pr = sub.add_parser("present", help="emit a presentation with its verdict")
    common(pr, ["act", "diagonal", "m0", "product-diagonal", "dp", "wreath"])
    pr.add_argument("--rectangular", action="store_true")
    pr.add_argument("--canonical", action="store_true", help="all elements as generators")
    pr.add_argument("--reduce", action="store_true", help="drop redundant relations")
    pr.add_argument("--literal", action="store_true", help="use only relation sides in the product side sets")

    ve = sub.add_parser("verify", help="check presentations against their target acts")
    ve.add_argument("file")
    ve.add_argument("--name")

    r = sub.add_parser("reduce", help="reduce a presentation, or the T1 block of a wreath presentation")
    r.add_argument("file", nargs="?")
    r.add_argument("--name")
    r.add_argument("--out")
    r.add_argument("--wreath", action="store_true")
    r.add_argument("--act", action="append")
    r.add_argument("--workspace")
    r.add_argument("--U", default="fg", help="fg | left-zero[:z]")

    cn = sub.add_parser("connect", help="derive an equation or connect two maps, with a certificate")
    cn.add_argument("--presentation", help="workspace holding the presentation")
    cn.add_argument("--name", help="presentation to use")
    cn.add_argument("--lhs")
    cn.add_argument("--rhs")
    cn.add_argument("--maps", action="store_true", help="(U, a)-connectedness of two maps A -> N")
    cn.add_argument("--monoid", action="append")
    cn.add_argument("--workspace")
    cn.add_argument("--U", help="maps separated by ';', values by ','")
    cn.add_argument("--at", type=int, default=0, help="the act element a")
    cn.add_argument("--theta")
    cn.add_argument("--phi")
    cn.add_argument("--replay", help="load a workspace and replay its certificates")
    cn.add_argument("--name-out", help="name of the certificate entry")
    cn.add_argument("--out")

    s = sub.add_parser("suite", help="run the acceptance criteria")
    s.add_argument("--family", default="small", choices=["small"])
    s.add_argument("--only", type=int, nargs="*")
    s.add_argument("--seed", type=int, default=0)
    return p


COMMANDS = {
    "validate": cmd_validate,
    "construct": cmd_construct,
    "generate": cmd_generate,
    "present": cmd_present,
    "verify": cmd_verify,
    "reduce": cmd_reduce,
    "connect": cmd_connect,
    "suite": cmd_suite,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    rep = Reporter(args.json)
    try:
        code = COMMANDS[args.verb](args, rep)
    except ActForgeError as e:
        rep.report = e.to_report()
        if not rep.as_json:
            print(f"error: {type(e).__name__}: {e}", file=sys.stderr)
            if e.witness:
                print(f"  witness: {json.dumps(rep.report['witness'], ensure_ascii=False)}", file=sys.stderr)
        return rep.finish(e.exit_code)
    return rep.finish(code)


if __name__ == "__main__":
    sys.exit(main())
