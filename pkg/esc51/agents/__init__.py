"""The QL-C51 and ES-C51 learners."""
from esc51.agents import agent, churn, config, errors, record, targets, trainer

Algorithm = config.Algorithm
AgentConfig = config.AgentConfig
C51Agent = agent.C51Agent
act = agent.act
build_target_ql = targets.build_target_ql
build_target_es = targets.build_target_es
ChurnProbe = churn.ChurnProbe
churn_rate = churn.churn_rate
EpisodeLog = record.EpisodeLog
TrainingEvent = record.TrainingEvent
RunRecord = record.RunRecord
TrainingHooks = trainer.TrainingHooks
train_loop = trainer.train_loop
