//! Binary classifiers for parallel-sentence identification: a greedy
//! threshold on a scalar similarity, gradient boosting on binomial
//! deviance, an RBF-kernel SVM trained by sequential minimal optimization,
//! and a soft-voting ensemble, plus stratified cross-validation and
//! precision/recall/F1 scoring.

mod dataset;
mod ensemble;
mod error;
mod gb;
mod io;
mod metrics;
mod svm;
mod threshold;
mod tree;

pub use dataset::{Dataset, Row};
pub use ensemble::{predict, predict_proba, AnyModel, EnsembleModel};
pub use error::{Error, Result};
pub use gb::{gb_fit, GbConfig, GbModel};
pub use io::{load_model, save_model};
pub use metrics::{accuracy, kfold_cv, prf1, CvReport, FoldMetrics};
pub use svm::{svm_fit, SvmConfig, SvmModel};
pub use threshold::{threshold_fit, ThresholdModel, THRESHOLD_STEP};
pub use tree::TreeNode;
