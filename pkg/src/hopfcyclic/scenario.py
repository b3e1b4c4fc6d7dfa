"""Scenario documents: declarative JSON inputs naming structures and tasks.

A scenario fixes a ground field, defines named objects (algebras,
algebroids, coefficients, measurings, Lie-Rinehart pairs, operads), and
lists tasks to run against them.  Running a scenario produces a report
that serializes deterministically, so two runs of the same document give
byte-identical JSON.
"""

from fractions import Fraction
import json
import time

from .exactlin import (
    DescentFailure, FieldSpec, LinMap, NoSolution, NotInvertible, QQ, Space,
)
from .algcore import AlgebraData, check_algebra, check_coalgebra
from .hopfalgebroid import (
    check_hopf_algebroid, check_hopf_galois, check_left_bialgebroid,
    check_sayd, check_yd_algebra, dual_numbers, group_algebra,
    group_hopf_algebroid, pair_hopf_algebroid, scalar_algebra, scalar_sayd,
    scalar_yd_algebra, split_pair_algebra, base_sayd_for_pair,
    trivial_hopf_algebroid,
)
from .measuring import (
    ComoduleMeasuringData, check_hopf_algebroid_measuring,
    check_sayd_comodule_measuring, derivation_pair_comodule_measuring,
    derivation_pair_measuring, identity_comodule_measuring,
    identity_measuring, point_coalgebra, primitive_pair_coalgebra,
    zero_primitive_comodule_measuring, zero_primitive_measuring,
)
from .cyclichom import (
    CharNotZero, build_cocyclic_CU, build_cocyclic_with_coeffs,
    build_cyclic_CU, build_cyclic_with_coeffs, check_chain_map,
    check_cyclic_module, cyclic_homology_char0, hochschild_homology,
    hopf_galois_square, induced_coeff_map, induced_cyclic_map,
)
from .lierinehart import (
    abelian_lr, check_lie_rinehart, check_lie_rinehart_measuring,
    check_lr_complex, lie_rinehart_homology, nonabelian_2d,
)
from .operadcyc import (
    CertificateFailure, StabilityFailure, check_comp_module, check_operad,
    build_yd_comp_module, build_yd_operad, one_dimensional_comp_module,
    one_dimensional_operad,
)


class ParseError(Exception):
    pass


class ReferenceError(ParseError):
    """A task or definition names an object that does not exist."""


class DimensionMismatch(ParseError):
    pass


def _field_of(name):
    if name == "Q":
        return QQ
    if isinstance(name, str) and name.startswith("F") and name[1:].isdigit():
        try:
            return FieldSpec(int(name[1:]))
        except AssertionError:
            raise ParseError("not a prime field: %r" % name)
    raise ParseError("unknown field %r" % name)


def _scalar(field, v, where):
    """Scalars appear as ints or as strings like "-3/2"."""
    try:
        if isinstance(v, int):
            return field.of_int(v)
        if isinstance(v, str):
            return field.parse(v)
    except (ValueError, ZeroDivisionError) as e:
        raise ParseError("bad scalar %r in %s: %s" % (v, where, e))
    raise ParseError("bad scalar %r in %s" % (v, where))


def _sparse_entry(field, row, where):
    """A sparse entry [i.., coeff] or [i.., num, den] with integer indices."""
    if len(row) < 2:
        raise ParseError("short sparse entry in %s" % where)
    if (len(row) >= 3 and isinstance(row[-1], int)
            and isinstance(row[-2], int) and all(
                isinstance(i, int) for i in row[:-2])):
        # trailing (numerator, denominator) pair
        try:
            c = field.of_int(row[-2], row[-1])
        except ZeroDivisionError as e:
            raise ParseError("bad scalar in %s: %s" % (where, e))
        return tuple(row[:-2]), c
    return tuple(row[:-1]), _scalar(field, row[-1], where)


_CATEGORIES = ("algebras", "coalgebras", "hopf_algebroids", "sayd_modules",
               "yd_algebras", "measurings", "comodule_measurings",
               "lie_rinehart", "operads", "comp_modules")

_TASK_KINDS = ("validate", "homology", "measure", "induced", "hopf_galois")


class ScenarioDocument:
    def __init__(self, data, name="scenario", field_override=None):
        if not isinstance(data, dict):
            raise ParseError("scenario must be a JSON object")
        self.name = data.get("name", name)
        fname = field_override or data.get("field", "Q")
        self.field_name = fname
        self.field = _field_of(fname)
        self.data = data
        self.objects = self.build_objects()
        self.elements = self._parse_elements()
        self.tasks = self._parse_tasks()

    # -- object resolution ------------------------------------------------

    def build_objects(self):
        """Instantiate every named definition.  Called again per task in
        parallel runs, so the built objects are never shared between
        threads."""
        objects = {}

        def define(name, cat, obj):
            if name in objects:
                raise ParseError("duplicate definition %r" % name)
            objects[name] = (cat, obj)

        def ref(name, cats, where):
            if not isinstance(name, str) or name not in objects:
                raise ReferenceError(
                    "unknown reference %r in %s" % (name, where))
            cat, obj = objects[name]
            if cat not in cats:
                raise ReferenceError(
                    "%r referenced in %s is a %s, expected one of %s"
                    % (name, where, cat, "/".join(cats)))
            return obj

        f = self.field
        for name, d in self.data.get("algebras", {}).items():
            define(name, "algebras", self._make_algebra(name, d))
        for name, d in self.data.get("coalgebras", {}).items():
            preset = d.get("preset")
            if preset == "point":
                define(name, "coalgebras", point_coalgebra(f))
            elif preset == "primitive_pair":
                define(name, "coalgebras", primitive_pair_coalgebra(f))
            else:
                raise ParseError("unknown coalgebra preset %r" % preset)
        for name, d in self.data.get("hopf_algebroids", {}).items():
            if "pair_of" in d:
                A = ref(d["pair_of"], ("algebras",), "hopf_algebroid " + name)
                define(name, "hopf_algebroids", pair_hopf_algebroid(A, name))
                continue
            preset = d.get("preset")
            if preset == "trivial":
                h = trivial_hopf_algebroid(f)
            elif preset == "group_c2":
                h = group_hopf_algebroid(2, f)
            elif preset == "group_c3":
                h = group_hopf_algebroid(3, f)
            elif preset == "pair_dual":
                h = pair_hopf_algebroid(dual_numbers(f), name)
            elif preset == "pair_split":
                h = pair_hopf_algebroid(split_pair_algebra(f), name)
            else:
                raise ParseError("unknown hopf_algebroid preset %r" % preset)
            define(name, "hopf_algebroids", h)
        for name, d in self.data.get("sayd_modules", {}).items():
            h = ref(d.get("hopf"), ("hopf_algebroids",), "sayd " + name)
            preset = d.get("preset")
            if preset == "scalar":
                define(name, "sayd_modules", scalar_sayd(h, name))
            elif preset == "base_pair":
                A = ref(d.get("algebra"), ("algebras",), "sayd " + name)
                define(name, "sayd_modules", base_sayd_for_pair(h, A))
            else:
                raise ParseError("unknown sayd preset %r" % preset)
        for name, d in self.data.get("yd_algebras", {}).items():
            h = ref(d.get("hopf"), ("hopf_algebroids",), "yd_algebra " + name)
            if d.get("preset") != "scalar":
                raise ParseError(
                    "unknown yd_algebra preset %r" % d.get("preset"))
            define(name, "yd_algebras", scalar_yd_algebra(h))
        for name, d in self.data.get("measurings", {}).items():
            h = ref(d.get("hopf"), ("hopf_algebroids",), "measuring " + name)
            preset = d.get("preset")
            if preset == "identity":
                define(name, "measurings", identity_measuring(h))
            elif preset == "zero_primitive":
                define(name, "measurings", zero_primitive_measuring(h, name))
            elif preset == "pair_derivation":
                delta = self._make_derivation(h.A, d, "measuring " + name)
                define(name, "measurings",
                       derivation_pair_measuring(h, delta, name))
            else:
                raise ParseError("unknown measuring preset %r" % preset)
        for name, d in self.data.get("comodule_measurings", {}).items():
            p = ref(d.get("sayd"), ("sayd_modules",),
                    "comodule_measuring " + name)
            preset = d.get("preset")
            if preset == "identity":
                h = ref(d.get("hopf"), ("hopf_algebroids",),
                        "comodule_measuring " + name)
                define(name, "comodule_measurings",
                       identity_comodule_measuring(h, p, name))
                continue
            m = ref(d.get("measuring"), ("measurings",),
                    "comodule_measuring " + name)
            if preset == "zero_primitive":
                define(name, "comodule_measurings",
                       zero_primitive_comodule_measuring(m, p, name))
            elif preset == "pair_derivation":
                define(name, "comodule_measurings",
                       derivation_pair_comodule_measuring(m, p, name))
            else:
                raise ParseError(
                    "unknown comodule_measuring preset %r" % preset)
        for name, d in self.data.get("lie_rinehart", {}).items():
            preset = d.get("preset")
            if preset == "nonabelian_2d":
                define(name, "lie_rinehart", nonabelian_2d(f))
            elif preset == "abelian":
                define(name, "lie_rinehart", abelian_lr(d.get("dim", 1), f))
            else:
                raise ParseError("unknown lie_rinehart preset %r" % preset)
        for name, d in self.data.get("operads", {}).items():
            preset = d.get("preset")
            top = d.get("max_arity", 3)
            if preset == "one_dimensional":
                define(name, "operads", one_dimensional_operad(f, top))
            elif preset == "yd":
                h = ref(d.get("hopf"), ("hopf_algebroids",),
                        "operad " + name)
                z = ref(d.get("yd_algebra"), ("yd_algebras",),
                        "operad " + name)
                define(name, "operads", build_yd_operad(h, z, top))
            else:
                raise ParseError("unknown operad preset %r" % preset)
        for name, d in self.data.get("comp_modules", {}).items():
            od = ref(d.get("operad"), ("operads",), "comp_module " + name)
            preset = d.get("preset")
            top = d.get("max_degree", od.N)
            if preset == "one_dimensional":
                define(name, "comp_modules",
                       one_dimensional_comp_module(od, top))
            elif preset == "yd":
                h = ref(d.get("hopf"), ("hopf_algebroids",),
                        "comp_module " + name)
                l = ref(d.get("sayd"), ("sayd_modules",),
                        "comp_module " + name)
                z = ref(d.get("yd_algebra"), ("yd_algebras",),
                        "comp_module " + name)
                define(name, "comp_modules",
                       build_yd_comp_module(h, l, z, od, top))
            else:
                raise ParseError("unknown comp_module preset %r" % preset)
        return objects

    def _make_algebra(self, name, d):
        f = self.field
        if "preset" in d:
            preset = d["preset"]
            if preset == "scalar":
                return scalar_algebra(f)
            if preset == "dual_numbers":
                return dual_numbers(f)
            if preset == "split_pair":
                return split_pair_algebra(f)
            if preset == "group":
                return group_algebra(d.get("order", 2), f)
            raise ParseError("unknown algebra preset %r" % preset)
        where = "algebra " + name
        dim = d.get("dim")
        if not isinstance(dim, int) or dim < 1:
            raise ParseError("missing dim in " + where)
        unit = d.get("unit")
        if not isinstance(unit, list) or len(unit) != dim:
            raise DimensionMismatch(
                "unit of %s must have %d coordinates" % (name, dim))
        sp = Space(dim, name)
        uvec = tuple(_scalar(f, v, where) for v in unit)
        entries = {}
        for row in d.get("mul", []):
            (i, j, k), c = _sparse_entry(f, row, where)
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise DimensionMismatch(
                    "mul index out of range in " + where)
            key = (k, i * dim + j)
            entries[key] = f.add(entries.get(key, f.zero), c)
        mul = LinMap(Space(dim * dim), sp, f,
                     {k: v for k, v in entries.items() if v})
        return AlgebraData(sp, mul, uvec, f, name)

    def _make_derivation(self, A, d, where):
        f = self.field
        dim = A.space.dim
        entries = {}
        for row in d.get("derivation", []):
            (i, j), c = _sparse_entry(f, row, where)
            if not (0 <= i < dim and 0 <= j < dim):
                raise DimensionMismatch(
                    "derivation index out of range in " + where)
            if c:
                entries[(i, j)] = c
        return LinMap(A.space, A.space, f, entries)

    def _parse_elements(self):
        f = self.field
        out = {}
        for name, coords in self.data.get("elements", {}).items():
            if not isinstance(coords, list):
                raise ParseError("element %r must be a coordinate list" % name)
            out[name] = tuple(
                _scalar(f, v, "element " + name) for v in coords)
        return out

    def _parse_tasks(self):
        tasks = self.data.get("tasks", [])
        if not isinstance(tasks, list):
            raise ParseError("tasks must be a list")
        norm = []
        for idx, t in enumerate(tasks):
            where = "task %d" % idx
            if not isinstance(t, dict):
                raise ParseError(where + " must be an object")
            kind = t.get("kind")
            if kind not in _TASK_KINDS:
                raise ParseError("unknown task kind %r in %s" % (kind, where))
            name = t.get("object")
            if name not in self.objects:
                raise ReferenceError(
                    "unknown reference %r in %s" % (name, where))
            cat, obj = self.objects[name]
            task = dict(t)
            task["_index"] = idx
            task["_category"] = cat
            if kind in ("induced", "hopf_galois"):
                ename = t.get("element")
                if ename not in self.elements:
                    raise ReferenceError(
                        "unknown element %r in %s" % (ename, where))
                C = obj.base.C if isinstance(obj, ComoduleMeasuringData) \
                    else obj.C
                vec = self.elements[ename]
                if len(vec) != C.space.dim:
                    raise DimensionMismatch(
                        "element %r has %d coordinates, coalgebra has "
                        "dimension %d" % (ename, len(vec), C.space.dim))
            norm.append(task)
        return norm

    def to_json(self):
        """Scenario serialization; parsing the result reproduces the
        document."""
        return json.dumps(self.data, separators=(",", ":"), sort_keys=False)


def parse_scenario(path, field_override=None):
    with open(path, "r") as fh:
        text = fh.read()
    return parse_scenario_text(text, name=_basename(path),
                               field_override=field_override)


def parse_scenario_text(text, name="scenario", field_override=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError("invalid JSON: %s" % e)
    return ScenarioDocument(data, name=name, field_override=field_override)


def _basename(path):
    base = str(path).replace("\\", "/").rsplit("/", 1)[-1]
    return base[:-5] if base.endswith(".json") else base


# -- running ---------------------------------------------------------------

class ReportDocument:
    def __init__(self, scenario=None, field=None):
        self.scenario = scenario
        self.field = field
        self.tasks = []
        self.timings = []  # seconds per task, kept out of the serialization

    def to_dict(self):
        out = {"version": 1}
        if self.scenario is not None:
            out["scenario"] = self.scenario
            out["field"] = self.field
        out["tasks"] = self.tasks
        return out

    def counts(self):
        passed = sum(1 for t in self.tasks if t["status"] == "pass")
        failed = sum(1 for t in self.tasks if t["status"] == "fail")
        errors = sum(1 for t in self.tasks if t["status"] == "error")
        return passed, failed, errors

    @property
    def ok(self):
        _, failed, errors = self.counts()
        return failed == 0 and errors == 0


def _jsonable(v):
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return [_jsonable(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in sorted(v.items())}
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return repr(v)


def _checks_of(rep):
    out = []
    for r in rep.results:
        c = {"name": r.name, "passed": r.passed}
        if not r.passed and r.witness is not None:
            c["witness"] = _jsonable(r.witness)
        out.append(c)
    return out


_VALIDATORS = {
    "algebras": lambda a: check_algebra(a),
    "coalgebras": lambda c: check_coalgebra(c),
    "sayd_modules": check_sayd,
    "yd_algebras": check_yd_algebra,
    "measurings": check_hopf_algebroid_measuring,
    "comodule_measurings": check_sayd_comodule_measuring,
    "operads": check_operad,
    "comp_modules": check_comp_module,
}


def _validate(cat, obj):
    if cat == "hopf_algebroids":
        rep = check_left_bialgebroid(obj)
        rep.extend(check_hopf_algebroid(obj), "hopf:")
        rep.extend(check_hopf_galois(obj), "galois:")
        return rep
    if cat == "lie_rinehart":
        rep = check_lie_rinehart(obj)
        rep.extend(check_lr_complex(obj), "complex:")
        return rep
    return _VALIDATORS[cat](obj)


def _homology(task, cat, obj, objects, max_degree):
    top = max_degree if max_degree is not None else task.get("max_degree", 3)
    theory = task.get("theory", "HC")
    if cat == "lie_rinehart":
        dims = lie_rinehart_homology(obj, top)
        return "LR", dims
    variant = task.get("variant", "cyclic")
    coeff_name = task.get("coefficients")
    if coeff_name is not None:
        if coeff_name not in objects or objects[coeff_name][0] != \
                "sayd_modules":
            raise ReferenceError(
                "unknown coefficients %r in homology task" % coeff_name)
        p = objects[coeff_name][1]
        cm = (build_cyclic_with_coeffs if variant == "cyclic"
              else build_cocyclic_with_coeffs)(obj, p, top + 1)
    else:
        cm = (build_cyclic_CU if variant == "cyclic"
              else build_cocyclic_CU)(obj, top + 1)
    if theory == "HH":
        hr = hochschild_homology(cm, normalized=task.get("normalized", False))
    elif theory == "HC":
        hr = cyclic_homology_char0(cm)
    else:
        raise ParseError("unknown homology theory %r" % theory)
    return theory, hr.dims


def _measure(cat, obj):
    if cat == "measurings":
        return check_hopf_algebroid_measuring(obj)
    if cat == "comodule_measurings":
        return check_sayd_comodule_measuring(obj)
    if cat == "lie_rinehart_measurings":
        return check_lie_rinehart_measuring(obj)
    raise ParseError("object of type %s has no measuring certificate" % cat)


def _induced(task, cat, obj, elements, max_degree):
    top = max_degree if max_degree is not None else task.get("max_degree", 3)
    variant = task.get("variant", "cyclic")
    vec = elements[task["element"]]
    if cat == "comodule_measurings":
        maps = induced_coeff_map(obj, vec, top, variant)
        build = (build_cyclic_with_coeffs if variant == "cyclic"
                 else build_cocyclic_with_coeffs)
        src = build(obj.base.src, obj.src_p, top)
        dst = build(obj.base.dst, obj.dst_p, top)
    else:
        maps = induced_cyclic_map(obj, vec, top, variant)
        build = build_cyclic_CU if variant == "cyclic" else build_cocyclic_CU
        src = build(obj.src, top)
        dst = build(obj.dst, top)
    rep = check_chain_map(src, dst, maps)
    rep.extend(check_cyclic_module(src), "src:")
    rep.extend(check_cyclic_module(dst), "dst:")
    return rep


def _hopf_galois(task, cat, obj, elements, max_degree):
    top = max_degree if max_degree is not None else task.get("max_degree", 3)
    vec = elements[task["element"]]
    if cat == "comodule_measurings":
        return hopf_galois_square(obj.base, vec, top, coeff_measuring=obj)
    return hopf_galois_square(obj, vec, top)


_TASK_ERRORS = (CharNotZero, DescentFailure, StabilityFailure,
                CertificateFailure, NoSolution, NotInvertible, ParseError,
                ZeroDivisionError, AssertionError)


def _run_task(task, objects, elements, max_degree):
    kind = task["kind"]
    name = task["object"]
    cat, obj = objects[name]
    record = {"index": task["_index"], "kind": kind, "object": name}
    try:
        if kind == "validate":
            rep = _validate(cat, obj)
            record["status"] = "pass" if rep.ok else "fail"
            record["checks"] = _checks_of(rep)
        elif kind == "homology":
            theory, dims = _homology(task, cat, obj, objects, max_degree)
            record["theory"] = theory
            record["table"] = [{"degree": n, "dim": d}
                               for n, d in enumerate(dims)]
            record["status"] = "pass"
        elif kind == "measure":
            rep = _measure(cat, obj)
            record["status"] = "pass" if rep.ok else "fail"
            record["checks"] = _checks_of(rep)
        elif kind == "induced":
            record["element"] = task["element"]
            rep = _induced(task, cat, obj, elements, max_degree)
            record["status"] = "pass" if rep.ok else "fail"
            record["certificate"] = _checks_of(rep)
        elif kind == "hopf_galois":
            record["element"] = task["element"]
            rep = _hopf_galois(task, cat, obj, elements, max_degree)
            record["status"] = "pass" if rep.ok else "fail"
            record["checks"] = _checks_of(rep)
    except _TASK_ERRORS as e:
        record["status"] = "error"
        record["error"] = type(e).__name__
        record["detail"] = str(e)
    return record


def run(document, kinds=None, max_degree=None, parallel=False):
    """Run the document's tasks in order.  A failing task is recorded and
    the remaining tasks still run."""
    report = ReportDocument(document.name, document.field_name)
    tasks = [t for t in document.tasks
             if kinds is None or t["kind"] in kinds]
    if parallel and len(tasks) > 1:
        # towers cache on the shared objects, so each worker rebuilds
        from concurrent.futures import ThreadPoolExecutor

        def work(task):
            t0 = time.monotonic()
            doc_objects = document.build_objects()
            rec = _run_task(task, doc_objects, document.elements, max_degree)
            return rec, time.monotonic() - t0

        with ThreadPoolExecutor(max_workers=min(4, len(tasks))) as ex:
            for rec, dt in ex.map(work, tasks):
                report.tasks.append(rec)
                report.timings.append(dt)
        return report
    for task in tasks:
        t0 = time.monotonic()
        rec = _run_task(task, document.objects, document.elements,
                        max_degree)
        report.tasks.append(rec)
        report.timings.append(time.monotonic() - t0)
    return report


# -- emission ----------------------------------------------------------------

def emit(report, format="json"):
    if format == "json":
        return json.dumps(report.to_dict(), separators=(",", ":"))
    if format != "text":
        raise ValueError("unknown format %r" % format)
    lines = []
    if report.scenario is not None:
        lines.append("scenario %s over %s" % (report.scenario, report.field))
    for t in report.tasks:
        head = "[%d] %s %s: %s" % (t.get("index", 0), t["kind"],
                                   t["object"], t["status"].upper())
        if t["status"] == "error":
            head += " (%s: %s)" % (t["error"], t["detail"])
        lines.append(head)
        if "table" in t:
            lines.append("    %s dims: %s" % (
                t.get("theory", ""),
                " ".join(str(r["dim"]) for r in t["table"])))
        for c in t.get("checks", []) + t.get("certificate", []):
            if not c["passed"]:
                lines.append("    FAIL %s witness=%r"
                             % (c["name"], c.get("witness")))
    passed, failed, errors = report.counts()
    lines.append("total: %d passed, %d failed, %d errors"
                 % (passed, failed, errors))
    return "\n".join(lines)
