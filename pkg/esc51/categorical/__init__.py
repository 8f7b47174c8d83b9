"""Categorical return distributions over a fixed atom support."""
from esc51.categorical import errors, moments, projection, support

Support = support.Support
CategoricalDistribution = support.CategoricalDistribution
make_support = support.make_support
expectation = moments.expectation
variance = moments.variance
shift_and_project = projection.shift_and_project
project_batch = projection.project_batch
mix = projection.mix
mix_batch = projection.mix_batch
project_then_mix = projection.project_then_mix
