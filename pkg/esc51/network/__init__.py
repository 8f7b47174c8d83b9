"""The value distribution network and its training machinery."""
from esc51.network import checkpoint, errors, mlp, optimizer

ValueDistributionNetwork = mlp.ValueDistributionNetwork
TargetNetwork = mlp.TargetNetwork
Gradients = mlp.Gradients
q_values = mlp.q_values
sync_target = mlp.sync_target
OptimizerState = optimizer.OptimizerState
AdamOptimizer = optimizer.AdamOptimizer
apply_update = optimizer.apply_update
