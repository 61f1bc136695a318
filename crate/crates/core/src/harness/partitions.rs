use crate::data::{split_indices, Dataset, SplitSpec};
use crate::Result;

/// Proof that hyperparameter selection has finished. Only the harness can
/// create one, and the test partition cannot be read without it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Selection {
    chosen: Option<usize>,
}

impl Selection {
    pub(crate) fn fix(chosen: Option<usize>) -> Selection {
        Selection { chosen }
    }

    pub fn chosen(&self) -> Option<usize> {
        self.chosen
    }
}

/// Raw (unpreprocessed) train, validation and test partitions of one trial.
pub trait Partitions {
    fn train(&self) -> &Dataset;
    fn validation(&self) -> &Dataset;
    fn test(&self, selection: &Selection) -> &Dataset;
}

#[derive(Debug, Clone)]
pub struct SplitPartitions {
    train: Dataset,
    validation: Dataset,
    test: Dataset,
    indices: [Vec<usize>; 3],
}

impl SplitPartitions {
    pub fn new(ds: &Dataset, spec: &SplitSpec) -> Result<SplitPartitions> {
        let indices = split_indices(ds.labels(), spec)?;
        Ok(SplitPartitions {
            train: ds.subset(&indices[0]),
            validation: ds.subset(&indices[1]),
            test: ds.subset(&indices[2]),
            indices,
        })
    }

    /// Row indices into the source dataset, in train, validation, test order.
    pub fn indices(&self) -> &[Vec<usize>; 3] {
        &self.indices
    }
}

impl Partitions for SplitPartitions {
    fn train(&self) -> &Dataset {
        &self.train
    }

    fn validation(&self) -> &Dataset {
        &self.validation
    }

    fn test(&self, _selection: &Selection) -> &Dataset {
        &self.test
    }
}
