//! Corpora, tokenization, word vectors and bag-of-words baselines.
//!
//! Class index 0 maps to SVM label -1 and class index 1 to +1 everywhere.

mod dataset;
mod embed;
mod features;
mod qbow;
mod tokenize;

pub use dataset::{
    load_imdb, load_lambeq, load_lambeq_split, sample_subset, Document, LabeledDataset, LAMBEQ_TEST_FILE,
    LAMBEQ_TRAIN_FILE,
};
pub use embed::{
    load_embeddings_text, ppmi_matrix, sentence_vector, top_eigenpairs, train_embeddings, train_embeddings_with,
    EmbeddingParams, EmbeddingTable, SparseSymmetric, DENSE_LIMIT,
};
pub use features::{FeatureRow, FeatureSet, Split};
pub use qbow::{qbow_classify, qbow_train, QBowMode, QBowModel, TIE_TOL};
pub use tokenize::{tokenize, TokenizeMode};
