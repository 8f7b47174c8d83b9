"""Seed sweeps, run logs and statistical comparisons."""
from esc51.experiment import compare, errors, evaluate, plot_data, runs, stats

ComparisonReport = compare.ComparisonReport
ExperimentFailure = errors.ExperimentFailure
run_training = runs.run_training
final_decile_mean = stats.final_decile_mean
wilcoxon_signed_rank = stats.wilcoxon_signed_rank
improvement_pct = stats.improvement_pct
emit_plot_data = plot_data.emit_plot_data
evaluate_policy = evaluate.evaluate_policy
