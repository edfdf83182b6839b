from __future__ import annotations

from cobjeval.cobol import StatementKind, build_cfg, parse_cobol


def reachable_by_dfs(edges, entry):
    """Independent reachability oracle: plain DFS re-implementation."""
    adjacency = {}
    for a, b in edges:
        adjacency.setdefault(a, []).append(b)
    seen, stack = set(), [entry]
    while stack:
        node = stack.pop()
        if node in seen:
            continue
        seen.add(node)
        stack.extend(adjacency.get(node, []))
    return seen


def test_single_statement_cfg():
    para = parse_cobol("P1.\n    MOVE A TO B.\n", "P1")
    cfg = build_cfg(para)
    assert len(cfg.nodes) == 1
    assert cfg.edges == []
    assert cfg.entry == para.statements[0].index


def test_empty_paragraph_cfg():
    para = parse_cobol("P1.\nP2.\n    GOBACK.\n", "P1")
    cfg = build_cfg(para)
    assert cfg.nodes == {}
    assert cfg.entry is None


def test_if_fork_has_branch_head_and_join_successors():
    # 4-statement fixture: IF holding two MOVEs, then a trailing MOVE.
    src = (
        "P1.\n"
        "    IF A = 1\n"
        "        MOVE 1 TO X\n"
        "        MOVE 2 TO Y\n"
        "    END-IF.\n"
        "    MOVE 3 TO Z.\n"
    )
    para = parse_cobol(src, "P1")
    cfg = build_cfg(para)
    fork = para.statements[0]
    branch_head = fork.then_statements[0]
    join = para.statements[1]
    assert sorted(cfg.successors(fork.index)) == sorted([branch_head.index, join.index])
    # Paths enumerated by hand: IF->M1->M2->M3 and IF->M3.
    second_move = fork.then_statements[1]
    assert cfg.successors(branch_head.index) == [second_move.index]
    assert cfg.successors(second_move.index) == [join.index]
    assert cfg.successors(join.index) == []


def test_mainline_exec_cics_all_reachable(mainline):
    cfg = build_cfg(mainline)
    reached = reachable_by_dfs(cfg.edges, cfg.entry)
    cics_nodes = [s.index for s in mainline.walk() if s.kind is StatementKind.EXEC_CICS]
    assert len(cics_nodes) == 3
    assert set(cics_nodes) <= reached


def test_every_node_reachable_from_entry(mainline):
    cfg = build_cfg(mainline)
    reached = reachable_by_dfs(cfg.edges, cfg.entry)
    assert reached == set(cfg.nodes)


def test_node_count_matches_statement_count(mainline):
    cfg = build_cfg(mainline)
    assert len(cfg.nodes) == mainline.statement_count()


def test_edge_endpoints_are_nodes(mainline):
    cfg = build_cfg(mainline)
    for a, b in cfg.edges:
        assert a in cfg.nodes and b in cfg.nodes


def test_if_else_fork_joins_after():
    src = (
        "P1.\n"
        "    IF A = 1\n"
        "        MOVE 1 TO X\n"
        "    ELSE\n"
        "        MOVE 2 TO Y\n"
        "    END-IF.\n"
        "    GOBACK.\n"
    )
    para = parse_cobol(src, "P1")
    cfg = build_cfg(para)
    fork = para.statements[0]
    then_head = fork.then_statements[0]
    else_head = fork.else_statements[0]
    join = para.statements[1]
    assert sorted(cfg.successors(fork.index)) == sorted([then_head.index, else_head.index])
    assert cfg.successors(then_head.index) == [join.index]
    assert cfg.successors(else_head.index) == [join.index]
