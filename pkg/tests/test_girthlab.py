import os
import sys

import pytest

# Make src/GirthLab importable
sys.path.append(os.path.join(os.path.dirname(__file__), '..', 'src', 'GirthLab'))

import arc_list
import girthlab
import walks
from digraph_core import build, circulant, cycle


def _write(tmp_path, name, D):
    path = str(tmp_path / name)
    arc_list.write_file(path, D)
    return path


def test_girth_of_five_cycle(tmp_path, capsys):
    path = _write(tmp_path, 'c5.txt', cycle(5))
    assert girthlab.main(['girth', '--input', path]) == 0
    out = capsys.readouterr().out
    assert 'girth 5, witness 0 1 2 3 4' in out


def test_girth_of_circulant_and_acyclic(tmp_path, capsys):
    assert girthlab.main(['girth', '-i', _write(tmp_path, 'circ.txt', circulant(5, 2))]) == 0
    assert 'girth 3' in capsys.readouterr().out

    assert girthlab.main(['girth', '-i', _write(tmp_path, 'path.txt', build(3, [(0, 1), (1, 2)]))]) == 0
    out = capsys.readouterr().out
    assert 'girth: none (acyclic)' in out
    assert 'girth=none' in out


def test_parse_error_exits_one(tmp_path, capsys):
    path = str(tmp_path / 'bad.txt')
    with open(path, 'w') as f:
        f.write("n 3\n0 1\n0 1\n")
    assert girthlab.main(['girth', '-i', path]) == 1
    assert 'line 3' in capsys.readouterr().err


def test_missing_file_exits_one(tmp_path):
    assert girthlab.main(['girth', '-i', str(tmp_path / 'nope.txt')]) == 1


def test_usage_error_exits_one():
    with pytest.raises(SystemExit) as excinfo:
        girthlab.main([])
    assert excinfo.value.code == 1
    with pytest.raises(SystemExit) as excinfo:
        girthlab.main(['verify', '--mode', 'nonsense'])
    assert excinfo.value.code == 1


def test_product_of_two_and_three_cycle(tmp_path, capsys):
    out_path = str(tmp_path / 'prod.txt')
    code = girthlab.main([
        'product', '-i', _write(tmp_path, 'c2.txt', cycle(2)),
        '-i', _write(tmp_path, 'c3.txt', cycle(3)), '--out', out_path,
    ])
    assert code == 0
    assert 'product: 2*3 = 6 vertices, 6 arcs' in capsys.readouterr().out
    P = arc_list.read_file(out_path)
    assert walks.girth(P).value == 6


def test_product_with_arcless_factor(tmp_path, capsys):
    code = girthlab.main([
        'product', '-i', _write(tmp_path, 'c4.txt', cycle(4)),
        '-i', _write(tmp_path, 'empty.txt', build(2, [])),
    ])
    assert code == 0
    out = capsys.readouterr().out
    assert '8 vertices, 0 arcs' in out
    assert 'm=0' in out


def test_verify_theorem6_doubles_girth(tmp_path, capsys):
    assert girthlab.main(['verify', '--mode', 'thm6', '-i', _write(tmp_path, 'c5.txt', cycle(5))]) == 0
    out = capsys.readouterr().out
    assert 'g(D×)=10=2g' in out
    assert 'note:' in out


def test_verify_corollary7_modes(tmp_path):
    c2 = _write(tmp_path, 'c2.txt', cycle(2))
    c6 = _write(tmp_path, 'c6.txt', cycle(6))
    assert girthlab.main(['verify', '--mode', 'cor7', '--p', '3', '-i', c2]) == 0
    assert girthlab.main(['verify', '--mode', 'cor7', '--p', '3', '-i', c6]) == 2
    assert girthlab.main(['verify', '--mode', 'cor7', '--p', '2', '-i', c2]) == 4
    assert girthlab.main(['verify', '--mode', 'cor7', '-i', c2]) == 4


def test_verify_ch_equality_and_preconditions(tmp_path, capsys):
    assert girthlab.main(['verify', '--mode', 'ch', '-i', _write(tmp_path, 'circ.txt', circulant(5, 2))]) == 0
    assert '(equality)' in capsys.readouterr().out

    star = _write(tmp_path, 'star.txt', build(3, [(0, 1), (0, 2)]))
    assert girthlab.main(['verify', '--mode', 'ch', '-i', star]) == 4
    assert 'minimum out-degree is 0' in capsys.readouterr().err

    irregular = _write(tmp_path, 'irr.txt', build(3, [(0, 1), (0, 2), (1, 2), (2, 0)]))
    assert girthlab.main(['verify', '--mode', 'bcw', '-i', irregular]) == 4


def test_verify_corollary8_short_even_cycle(tmp_path):
    assert girthlab.main(['verify', '--mode', 'cor8', '-i', _write(tmp_path, 'circ.txt', circulant(5, 2))]) == 2


def test_kv_format_is_single_line(tmp_path, capsys):
    path = _write(tmp_path, 'c5.txt', cycle(5))
    assert girthlab.main(['verify', '--mode', 'thm6', '--format', 'kv', '-i', path]) == 0
    lines = capsys.readouterr().out.splitlines()
    assert len(lines) == 1
    assert lines[0].startswith('mode=thm6 verdict=holds n=5 k=1 g=5')
    assert 'amplified_girth=10' in lines[0]


def test_verify_bounds_mode(tmp_path, capsys):
    assert girthlab.main(['verify', '--mode', 'bounds', '-i', _write(tmp_path, 'c7.txt', cycle(7))]) == 0
    assert 'violations=none' in capsys.readouterr().out


def test_enumerate_counts(capsys):
    assert girthlab.main(['enumerate', '--n', '2']) == 0
    assert '4 digraphs' in capsys.readouterr().out
    assert girthlab.main(['enumerate', '--n', '4', '--regular', '1']) == 0
    assert '9 digraphs' in capsys.readouterr().out


def test_enumerate_ch_sweep(capsys):
    assert girthlab.main(['enumerate', '--n', '4', '--min-out', '2', '--mode', 'ch', '--partition', '0/1']) == 0
    assert 'all hold' in capsys.readouterr().out


def test_enumerate_oversized_is_precondition(capsys):
    assert girthlab.main(['enumerate', '--n', '7']) == 4
    assert 'space size' in capsys.readouterr().err


def test_enumerate_bad_partition(capsys):
    assert girthlab.main(['enumerate', '--n', '3', '--partition', 'half']) == 4


def test_enumerate_sample_is_reproducible(capsys):
    argv = ['enumerate', '--n', '7', '--min-out', '1', '--mode', 'sample', '--count', '30']
    assert girthlab.main(argv) == 0
    first = capsys.readouterr().out
    assert girthlab.main(argv) == 0
    assert capsys.readouterr().out == first
    assert 'seed 20240611' in first


def test_enumerate_census(capsys):
    assert girthlab.main(['enumerate', '--n', '3', '--mode', 'census', '--p', '3']) == 0
    out = capsys.readouterr().out
    assert 'thm6_members=2' in out
    assert girthlab.main(['enumerate', '--n', '3', '--mode', 'census', '--p', '2']) == 4


def test_export_dot(tmp_path, capsys):
    assert girthlab.main(['export-dot', '-i', _write(tmp_path, 'c3.txt', cycle(3))]) == 0
    out = capsys.readouterr().out
    assert out.count(' -> ') == 3
    assert out.startswith('digraph D {')


def test_cage(capsys):
    assert girthlab.main(['cage', '--d', '2', '--g', '3']) == 0
    assert '2 3 5 5 4 false' in capsys.readouterr().out


def test_bounds(capsys):
    assert girthlab.main(['bounds', '--n', '10', '--k', '4', '--format', 'kv']) == 0
    out = capsys.readouterr().out.strip()
    assert 'ch_bound=3' in out and 'shen_bound=6' in out
    assert girthlab.main(['bounds', '--n', '10', '--k', '0']) == 4


@pytest.mark.skipif(not os.getenv('GIRTHLAB_SLOW'), reason='set GIRTHLAB_SLOW=1 for long sweeps')
def test_enumerate_ch_sweep_n5(capsys):
    assert girthlab.main(['enumerate', '--n', '5', '--min-out', '2', '--mode', 'ch']) == 0
    assert 'all hold' in capsys.readouterr().out


def _fake_long_girth(monkeypatch, tmp_path):
    monkeypatch.setenv('GIRTHLAB_WITNESS_DIR', str(tmp_path))
    monkeypatch.setattr(walks, 'girth', lambda D: walks.GirthResult(99, None))


def _witness_files(tmp_path, kind):
    return [name for name in os.listdir(tmp_path) if name.startswith(f'counterexample_{kind}_')]


def test_enumerate_ch_violation_writes_witness(tmp_path, monkeypatch, capsys):
    _fake_long_girth(monkeypatch, tmp_path)
    assert girthlab.main(['enumerate', '--n', '3', '--min-out', '1', '--mode', 'ch']) == 3
    assert 'witness file:' in capsys.readouterr().out
    files = _witness_files(tmp_path, 'ch')
    assert len(files) == 1
    assert arc_list.read_file(str(tmp_path / files[0])).n == 3


def test_sample_violation_writes_witness(tmp_path, monkeypatch, capsys):
    _fake_long_girth(monkeypatch, tmp_path)
    argv = ['enumerate', '--n', '5', '--min-out', '1', '--mode', 'sample', '--count', '5']
    assert girthlab.main(argv) == 3
    out = capsys.readouterr().out
    assert 'ch_holds=0' in out
    assert len(_witness_files(tmp_path, 'sample')) == 1


def test_census_identity_failure_writes_witness(tmp_path, monkeypatch):
    import products
    monkeypatch.setenv('GIRTHLAB_WITNESS_DIR', str(tmp_path))
    monkeypatch.setattr(products, 'amplified_parameters', lambda D, p: (p * D.n, 1, walks.GirthResult(1, None)))
    assert girthlab.main(['enumerate', '--n', '3', '--mode', 'census']) == 3
    assert len(_witness_files(tmp_path, 'thm6')) == 1


def test_bounds_violation_writes_witness(tmp_path, monkeypatch):
    path = _write(tmp_path, 'c5.txt', cycle(5))
    _fake_long_girth(monkeypatch, tmp_path)
    assert girthlab.main(['verify', '--mode', 'bounds', '-i', path]) == 3
    assert len(_witness_files(tmp_path, 'bounds')) == 1


def test_girth_labels_oriented_inputs(tmp_path, capsys):
    assert girthlab.main(['girth', '--format', 'kv', '-i', _write(tmp_path, 'c5.txt', cycle(5))]) == 0
    assert 'oriented=true' in capsys.readouterr().out
    assert girthlab.main(['girth', '--format', 'kv', '-i', _write(tmp_path, 'c2.txt', cycle(2))]) == 0
    assert 'oriented=false' in capsys.readouterr().out


def test_thm6_reports_bound_on_product(tmp_path, capsys):
    path = _write(tmp_path, 'c5.txt', cycle(5))
    assert girthlab.main(['verify', '--mode', 'thm6', '-i', path]) == 0
    out = capsys.readouterr().out
    assert 'max(ceil(pn/k), 2k-2) on the product: 10' in out
    assert 'amplified_shen_bound=10' in out
    assert 'ceiling_chain_ok=true' in out


def test_cor8_reports_bcw_verdict(tmp_path, capsys):
    path = _write(tmp_path, 'circ.txt', circulant(5, 2))
    assert girthlab.main(['verify', '--mode', 'cor8', '-i', path]) == 2
    out = capsys.readouterr().out
    assert 'BCW g <= ceil(n/d): holds' in out
    assert 'bcw=holds' in out


def test_sample_counts_ch_and_shen(capsys):
    argv = ['enumerate', '--n', '6', '--min-out', '1', '--mode', 'sample', '--count', '20', '--format', 'kv']
    assert girthlab.main(argv) == 0
    out = capsys.readouterr().out
    assert 'sampled=20 ch_holds=20 shen_holds=20 witness=none' in out
