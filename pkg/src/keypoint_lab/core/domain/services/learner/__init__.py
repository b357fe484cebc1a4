"""Learned keypoint generator: encoder, proposal and evaluation heads, training."""

from .adam import Adam
from .networks import (
    CloudFrame,
    check_params,
    encode,
    evaluate,
    init_evaluation,
    init_proposal,
    normalize_example,
    predict_keypoints,
    propose,
    score_candidates,
    score_gradient,
)
from .training import (
    MIN_PROPOSAL_POSITIVES,
    ProposalLoss,
    accuracy,
    evaluation_loss,
    proposal_loss,
    roc_auc,
    train_evaluation,
    train_proposal,
)

__all__ = [
    "MIN_PROPOSAL_POSITIVES",
    "Adam",
    "CloudFrame",
    "ProposalLoss",
    "accuracy",
    "check_params",
    "encode",
    "evaluate",
    "evaluation_loss",
    "init_evaluation",
    "init_proposal",
    "normalize_example",
    "predict_keypoints",
    "proposal_loss",
    "propose",
    "roc_auc",
    "score_candidates",
    "score_gradient",
    "train_evaluation",
    "train_proposal",
]
