from io import StringIO

import pandas as pd
import pytest

from timed_targets.experiments import (CSV_COLUMNS, GraphModel, SyntheticConfig, experiment_real, iter_synthetic,
                                       observe, results_frame, run_instance, with_summary_rows, write_csv)


def small_config(**kwargs):
    return SyntheticConfig(**{
        'model': GraphModel.BA, 'n_list': (10, 12), 'instances': 3, 'seed': 0, 'timing': False, **kwargs,
    })


@pytest.mark.parametrize('model', list(GraphModel))
def test_oracle_row(model):
    row = run_instance(small_config(model=model), 10, 1)
    assert list(row) == CSV_COLUMNS
    assert (row['model'], row['n'], row['seed'], row['instance']) == (model.value, 10, 0, 1)
    assert row['opt_method'] == 'oracle'
    assert row['tts_opt'] <= row['ts_opt'] <= row['ts_greedy']
    assert row['tts_opt'] <= row['tts_greedy']
    assert row['wall_ms'] is None


def test_no_optima_beyond_the_cap():
    row = run_instance(small_config(node_cap=8), 10, 0)
    assert row['ts_opt'] is None and row['tts_opt'] is None
    assert row['opt_method'] == ''


def test_timing():
    assert run_instance(small_config(timing=True), 10, 0)['wall_ms'] >= 0


def csv_text(config, workers=1):
    out = StringIO()
    write_csv(with_summary_rows(results_frame(list(iter_synthetic(config, workers)))), out)
    return out.getvalue()


def test_csv_is_deterministic():
    text = csv_text(small_config())
    assert text == csv_text(small_config())
    lines = text.splitlines()
    assert lines[0] == ','.join(CSV_COLUMNS)
    assert len(lines) == 1 + 2 * (3 + 2)


def test_workers_keep_the_order():
    assert csv_text(small_config(), workers=2) == csv_text(small_config())


def test_summary_rows():
    rows = list(iter_synthetic(small_config(n_list=(10,))))
    report = with_summary_rows(results_frame(rows))
    assert report['instance'].tolist() == [0, 1, 2, 'mean', 'std']
    assert report['opt_method'].tolist() == ['oracle'] * 3 + ['', '']

    sizes = [row['tts_greedy'] for row in rows]
    assert report['tts_greedy'].iloc[3] == pytest.approx(sum(sizes) / 3)
    assert report['tts_greedy'].iloc[4] == pytest.approx(pd.Series(sizes).std())


def test_summary_rows_of_nothing():
    assert with_summary_rows(results_frame([])).columns.tolist() == CSV_COLUMNS


def test_cell_formatting():
    rows = list(iter_synthetic(small_config(n_list=(10,), node_cap=8)))
    out = StringIO()
    write_csv(with_summary_rows(results_frame(rows)), out)
    mean_row = out.getvalue().splitlines()[4].split(',')
    assert mean_row[:4] == ['BA', '10', '0', 'mean']
    assert mean_row[4].count('.') == 1 and len(mean_row[4].split('.')[1]) == 3
    assert mean_row[6:] == ['', '', '', '']


def test_observations():
    results = results_frame(list(iter_synthetic(small_config())))
    observed = observe(results)
    assert observed.instances == 6
    assert observed.with_optima == 6
    assert 0 <= observed.tts_opt_below_ts_opt <= 6
    assert observed.tts_greedy_at_most_ts_greedy == int((results['tts_greedy'] <= results['ts_greedy']).sum())


def test_real_network_from_a_file(star10_file):
    report = experiment_real(star10_file)
    assert (report.n, report.m) == (10, 9)
    assert (report.ts_greedy, report.tts_greedy) == (6, 2)
    assert report.improvement == pytest.approx(400 / 6)
    assert report.reference is None
    assert report.node_count_matches is None


def test_real_network_with_self_loops(tmp_path):
    path = tmp_path / 'loops.txt'
    path.write_text("0 0\n0 1\n1 2\n")
    report = experiment_real(str(path), rule='simple')
    assert (report.n, report.m) == (3, 2)


@pytest.mark.slow
@pytest.mark.parametrize('model', list(GraphModel))
def test_desk_scale_sweep(model):
    config = SyntheticConfig(model=model, n_list=(10, 15, 20), instances=10, seed=1, timing=False)
    results = results_frame(list(iter_synthetic(config, workers=2)))
    assert len(results) == 30
    assert (results['opt_method'] == 'oracle').all()

    assert (results['tts_opt'] <= results['ts_opt']).all()
    assert (results['tts_opt'] <= results['tts_greedy']).all()
    assert (results['ts_opt'] <= results['ts_greedy']).all()
    assert (results['tts_greedy'] <= results['ts_greedy']).mean() >= 0.7

    means = results.groupby('n')[['tts_opt', 'ts_opt']].mean()
    assert (means['tts_opt'] <= means['ts_opt']).all()
