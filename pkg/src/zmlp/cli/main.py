"""
zmlp 命令行入口

子命令:
enum, classify, verify, graph, table1, table2, verify-small, toric, sing, walls, extract

退出码:
- 0: 成功且所有比对通过
- 1: 与随包结果不一致、回放失败或找不到证书
- 2: 输入错误（ZmlpError）
"""
from __future__ import annotations

import argparse
import logging
import sys
from math import gcd
from typing import Callable, Dict, List, Optional, Sequence

from zmlp.classify.engine import MAX_LIMIT, VerificationEngine
from zmlp.classify.enumeration import enumerate_comb
from zmlp.classify.families import classify_family, golden_table1, table1_rows
from zmlp.classify.graph import build_mutation_graph
from zmlp.classify.reduce import triangular_reduce
from zmlp.classify.search import verify_zmlp
from zmlp.classify.table2 import Table2Model
from zmlp.cli.config import RunConfig
from zmlp.cli.io import dumps, load_poly, write_text
from zmlp.divisibility.partition import format_pair, pair_to_json, parse_pair
from zmlp.divisibility.tuples import dual_tuple
from zmlp.errors import ZmlpError
from zmlp.toric.cones import parse_cone, step_a_blowup, toric_degeneration
from zmlp.toric.extraction import extraction_result
from zmlp.toric.singularity import singularity_type
from zmlp.toric.walls import PRESET, triangle_walls, wall_functions

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s %(levelname)s %(name)s: %(message)s"

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_ERROR = 2


def _emit(cfg: RunConfig, data, lines: Callable[[], List[str]]) -> None:
    if cfg.output_format == "json":
        print(dumps(data))
    else:
        for line in lines():
            print(line)


# ---- 分类 ----

def cmd_enum(cfg: RunConfig) -> int:
    a, b = cfg.options["a"], cfg.options["b"]
    pairs = enumerate_comb(a, b)
    data = {"a": a, "b": b, "count": len(pairs), "pairs": [pair_to_json(p) for p in pairs]}

    def lines():
        out = [f"ZMLP_comb({a},{b}): {len(pairs)} 个"]
        out += [f"  {format_pair(p)}" for p in pairs]
        return out

    _emit(cfg, data, lines)
    return EXIT_OK


def cmd_classify(cfg: RunConfig) -> int:
    a, b = cfg.options["a"], cfg.options["b"]
    rows = []
    for pair in enumerate_comb(a, b):
        moves = triangular_reduce(pair)
        rows.append({
            "pair": pair_to_json(pair),
            "text": format_pair(pair),
            "family": classify_family(pair, a, b).value,
            "moves": moves,
            "triangular": moves is not None,
        })
    data = {"a": a, "b": b, "rows": rows}

    def lines():
        out = [f"△({a},{b}): {len(rows)} 个对偶划分对"]
        for row in rows:
            moves = ",".join(row["moves"]) if row["triangular"] else "需要非三角形变异"
            out.append(f"  {row['family']:8s} {row['text']:24s} {moves}")
        return out

    _emit(cfg, data, lines)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    if not cfg.input_path:
        raise ZmlpError("verify 需要 --poly")
    f = load_poly(cfg.input_path)
    cert = verify_zmlp(f, depth_bound=cfg.depth, node_bound=cfg.nodes)
    if cert is None:
        data = {"poly": f.to_json(), "certificate": None}
        _emit(cfg, data, lambda: [f"{f}: 在 depth={cfg.depth}, nodes={cfg.nodes} 内没有找到证书"])
        return EXIT_MISMATCH
    replayed = cert.replay()
    data = {"poly": f.to_json(), "certificate": cert.to_json(), "replayed": replayed}

    def lines():
        out = [f"f = {f}", f"变异步数: {cert.mutation_count}, 回放: {'通过' if replayed else '失败'}"]
        for i, (step, g) in enumerate(zip(cert.steps, cert.polys[1:]), 1):
            out.append(f"  {i}. {step.spec} -> {g}")
        return out

    _emit(cfg, data, lines)
    plot_path = cfg.output_path
    if plot_path:
        from zmlp.plot import plot_certificate

        plot_certificate(cert, plot_path)
        logger.info("证书图已保存: %s", plot_path)
    return EXIT_OK if replayed else EXIT_MISMATCH


def cmd_graph(cfg: RunConfig) -> int:
    graph = build_mutation_graph(
        cfg.max_size,
        measure=cfg.options.get("measure", "box"),
        include_products=cfg.include_products,
        jobs=cfg.jobs,
    )
    if cfg.output_format == "dot":
        write_text(graph.to_dot(), cfg.output_path)
        print(f"{len(graph)} 个节点, {graph.graph.number_of_edges()} 条边 -> {cfg.output_path}")
        return EXIT_OK
    data = graph.to_json()

    def lines():
        out = [f"变异图（{graph.measure} <= {cfg.max_size}）: {len(graph)} 个节点, {graph.graph.number_of_edges()} 条边"]
        for node in data["nodes"]:
            out.append(f"  {node['id']}: {node['label']} (size {node['size']})")
        return out

    _emit(cfg, data, lines)
    return EXIT_OK


def _table1_triangles(k: int) -> List[tuple]:
    out = [(1, k), (2, k), (3, k), (k, k + 1)]
    return [(a, b) for a, b in out if a >= 1 and b >= 1 and gcd(a, b) == 1]


def cmd_table1(cfg: RunConfig) -> int:
    ks = cfg.options.get("k") or [3, 4, 5, 7]
    golden = {(a, b): sorted(rows) for a, b, rows in golden_table1()}
    report = []
    mismatches = []
    seen = set()
    for k in ks:
        for a, b in _table1_triangles(k):
            if (a, b) in seen:
                continue
            seen.add((a, b))
            rows = sorted((r.label.value, r.pair) for r in table1_rows(a, b))
            if not rows:
                continue
            expected = golden.get((a, b))
            ok = expected is None or rows == expected
            if not ok:
                missing = [f"{label} {format_pair(p)}" for label, p in expected if (label, p) not in rows]
                extra = [f"{label} {format_pair(p)}" for label, p in rows if (label, p) not in expected]
                mismatches.append(f"△({a},{b}): 缺少 {missing}, 多出 {extra}")
            report.append({
                "a": a,
                "b": b,
                "rows": [[label, pair_to_json(p)] for label, p in rows],
                "golden": expected is not None,
                "match": ok,
            })
    data = {"k": list(ks), "triangles": report, "mismatches": mismatches, "passed": not mismatches}

    def lines():
        out = []
        for entry in report:
            mark = "✓" if entry["match"] else "✗"
            out.append(f"{mark} △({entry['a']},{entry['b']})")
            for label, p in entry["rows"]:
                out.append(f"    {label:6s} {format_pair((tuple(p[0]), tuple(p[1])))}")
        out += [f"✗ {m}" for m in mismatches]
        return out

    _emit(cfg, data, lines)
    return EXIT_OK if not mismatches else EXIT_MISMATCH


def cmd_table2(cfg: RunConfig) -> int:
    model = Table2Model(
        a_max=cfg.options["a_max"],
        k_max=cfg.options["k_max"],
        scan=cfg.scan,
        use_cache=cfg.options.get("cache", False),
    )
    result = model.run(printlog=cfg.output_format == "text")
    if cfg.output_format == "json":
        print(dumps({
            "left": result["left"].to_dict(orient="records"),
            "right": result["right"].to_dict(orient="records"),
            "mismatches": result["mismatches"],
            "passed": result["passed"],
        }))
    return EXIT_OK if result["passed"] else EXIT_MISMATCH


def cmd_verify_small(cfg: RunConfig) -> int:
    limit = cfg.options["limit"]
    if limit > MAX_LIMIT:
        raise ZmlpError(f"limit 不能超过 {MAX_LIMIT}: {limit}")
    engine = VerificationEngine(
        limit=limit,
        jobs=cfg.jobs,
        printlog=cfg.output_format == "text",
        search_nontriangular=cfg.options.get("search", False),
        depth_bound=cfg.depth,
        node_bound=cfg.nodes,
    )
    result = engine.add_range().run()
    if cfg.output_format == "json":
        print(dumps({
            "limit": limit,
            "rows": result["rows"].to_dict(orient="records"),
            "flagged": [list(x) for x in result["flagged"]],
            "searched": [list(x) for x in result["searched"]],
            "failures": [list(x) for x in result["failures"]],
            "passed": result["passed"],
        }))
    else:
        for a, b, pair in result["flagged"]:
            print(f"  flagged △({a},{b}) {pair}")
        for a, b, pair in result["searched"]:
            print(f"  searched △({a},{b}) {pair}")
        for a, b, pair in result["failures"]:
            print(f"✗ △({a},{b}) {pair}")
    return EXIT_OK if result["passed"] else EXIT_MISMATCH


# ---- 环面 ----

def cmd_toric(cfg: RunConfig) -> int:
    a, b = cfg.options["a"], cfg.options["b"]
    deg = toric_degeneration(a, b)
    blowup = step_a_blowup(a, b)
    data = deg.to_json()
    data["step_a"] = {
        "fan": blowup.to_json(),
        "types": [singularity_type(c).to_json() for c in blowup.cones],
    }

    def lines():
        out = [f"σ  = {deg.sigma}", f"σ∨ = {deg.dual}", "中心剖分:"]
        for cone, t in zip(deg.subdivision.cones, deg.types):
            out.append(f"  {cone}: det {cone.det}, {t}")
        out.append("(1,-b,a) 处的星形剖分:")
        for cone in blowup.cones:
            out.append(f"  {cone}: {singularity_type(cone)}")
        return out

    _emit(cfg, data, lines)
    return EXIT_OK


def cmd_sing(cfg: RunConfig) -> int:
    cone = parse_cone(cfg.options["cone"])
    sing = singularity_type(cone)
    data = {"cone": cone.to_json(), "type": sing.to_json()}
    _emit(cfg, data, lambda: [f"{cone}: {sing}（正规形 {sing.normalized}）"])
    return EXIT_OK


def cmd_walls(cfg: RunConfig) -> int:
    lambdas = "preset" if cfg.options.get("preset") else "generic"
    pair_text = cfg.options.get("pair")
    if pair_text:
        report = triangle_walls(parse_pair(pair_text), lambdas)
    elif cfg.input_path:
        f = load_poly(cfg.input_path)
        report = wall_functions(f.newton_polygon(), dual_tuple(f), lambdas)
    else:
        raise ZmlpError("walls 需要 --poly 或 --pair")
    data = report.to_json()
    data["passed"] = report.passed

    def lines():
        out = [str(w) for w in report.walls]
        out.append(f"闭合条件: {'满足' if report.closes else '不满足'}, 次数和 {report.degree_sum}, 周长 {report.perimeter}")
        if lambdas == "preset":
            out.append(f"预设参数: {PRESET}")
        return out

    _emit(cfg, data, lines)
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_extract(cfg: RunConfig) -> int:
    a, b = cfg.options["a"], cfg.options["b"]
    pair_text = cfg.options.get("pair")
    pairs = [parse_pair(pair_text)] if pair_text else enumerate_comb(a, b)
    results = [(p, extraction_result(p, a, b)) for p in pairs]
    data = {"a": a, "b": b, "results": [dict(pair=pair_to_json(p), **res.to_json()) for p, res in results]}

    def lines():
        out = []
        for p, res in results:
            cert = res.certificate
            if cert is None:
                out.append(f"{format_pair(p)}: {res.reason}")
                continue
            mark = "✓" if cert.consistent else "✗"
            out.append(f"{mark} {format_pair(p)}: 第{cert.variant}种, {','.join(cert.moves) or '-'} -> {cert.base} {format_pair(cert.base_pair)}")
            out.append(f"    {cert.singularity} ~ {cert.base_singularity}")
        return out

    _emit(cfg, data, lines)
    inconsistent = [p for p, res in results if res.certificate is not None and not res.certificate.consistent]
    return EXIT_OK if not inconsistent else EXIT_MISMATCH


COMMANDS: Dict[str, Callable[[RunConfig], int]] = {
    "enum": cmd_enum,
    "classify": cmd_classify,
    "verify": cmd_verify,
    "graph": cmd_graph,
    "table1": cmd_table1,
    "table2": cmd_table2,
    "verify-small": cmd_verify_small,
    "toric": cmd_toric,
    "sing": cmd_sing,
    "walls": cmd_walls,
    "extract": cmd_extract,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="zmlp", description="零可变 Laurent 多项式的变异计算")
    parser.add_argument("-v", "--verbose", action="store_true", help="输出 DEBUG 日志")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str, json_flag: bool = True, jobs: bool = False):
        p = sub.add_parser(name, help=help_text)
        if json_flag:
            p.add_argument("--json", action="store_true", help="以 JSON 输出")
        if jobs:
            p.add_argument("--jobs", type=int, default=1, help="并行进程数（ZMLP_JOBS 优先）")
        return p

    def add_ab(p, pair: bool = False):
        p.add_argument("--a", type=int, required=True)
        p.add_argument("--b", type=int, required=True)
        if pair:
            p.add_argument("--pair", default=None, help="对偶划分对，格式 '<a-part>|<b-part>' 或 '(..),(..)'")

    add_ab(add("enum", "枚举 ZMLP_comb(a,b)"))
    add_ab(add("classify", "△(a,b) 的分类与三角形约化"))

    p = add("verify", "搜索变异证书")
    p.add_argument("--poly", required=True, help="多项式 JSON 文件")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--nodes", type=int, default=5000)
    p.add_argument("--plot", dest="plot_path", default=None, help="把证书中的多边形画到该图片")

    p = add("graph", "构造变异图", jobs=True)
    p.add_argument("--max-size", dest="max_size", type=int, default=3)
    p.add_argument("--measure", choices=["box", "points"], default="box")
    p.add_argument("--include-products", dest="include_products", action="store_true")
    p.add_argument("--dot", default=None, help="DOT 输出文件")

    p = add("table1", "重新生成分类表并与随包结果比较")
    p.add_argument("--k", type=int, nargs="+", default=None)

    p = add("table2", "大三角形上的计数")
    p.add_argument("--a-max", dest="a_max", type=int, default=7)
    p.add_argument("--k-max", dest="k_max", type=int, default=4)
    p.add_argument("--scan", type=int, default=50)
    p.add_argument("--cache", action="store_true", help="使用本地 parquet 缓存")

    p = add("verify-small", "a + b <= limit 的批量验证", jobs=True)
    p.add_argument("--limit", type=int, default=11)
    p.add_argument("--search", action="store_true", help="对需要非三角形变异的对偶划分对做一般搜索")
    p.add_argument("--depth", type=int, default=10)
    p.add_argument("--nodes", type=int, default=5000)

    add_ab(add("toric", "环面退化与中心剖分"))

    p = add("sing", "单纯锥的循环商奇点类型")
    p.add_argument("--cone", required=True, help="'v1;v2;v3'，例如 '1,0,0;0,1,0;1,-2,3'")

    p = add("walls", "墙函数与闭合条件")
    p.add_argument("--poly", default=None, help="多项式 JSON 文件")
    p.add_argument("--pair", default=None, help="△(a,b) 上的对偶划分对 '<a-part>|<b-part>' 或 '(..),(..)'")
    p.add_argument("--preset", action="store_true", help="使用预设参数 a1=b1=c1=0, b2=c2=-1, c3=1")

    add_ab(add("extract", "除子抽取的约化证书"), pair=True)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format=LOG_FORMAT)
    try:
        cfg = RunConfig.from_args(args)
        return COMMANDS[cfg.command](cfg)
    except ZmlpError as exc:
        print(f"错误: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
