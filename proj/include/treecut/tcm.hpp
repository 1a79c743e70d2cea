#pragma once

// Tree cut models for the marginal word distribution: a cut plus one
// probability per cut class, shared uniformly by the class's leaves.
// find_mdl selects the cut minimizing two-part description length
// (data bits plus half a log2(N) per parameter, uniform cut coding).

#include <cstdint>

#include "treecut/corpus.hpp"
#include "treecut/taxonomy.hpp"

namespace treecut {

struct TreeCutModel {
    TreeCut cut;
    std::vector<double> q;          // one probability per cut member
    std::uint64_t sample_size = 0;  // N used for the fit
};

// Per-noun probability q(C)/|C| where C is the cut class covering the word.
// Throws std::invalid_argument for a word outside the taxonomy.
double tcm_probability(const TreeCutModel& m, const Taxonomy& t,
                       std::string_view word);

// Maximum likelihood fit on a fixed cut: q(C) = #(C,S)/N with N the usable
// total of `counts`. Throws EstimationError on an empty sample and
// std::invalid_argument on an invalid cut.
TreeCutModel mle_tcm(const Taxonomy& t, const TreeCut& cut,
                     const ValueCounts& counts);

// Total description length in bits of the MLE model on `cut`:
//   sum_C #(C) * -log2(q(C)/|C|)  +  (|cut|/2) * log2(N)
// with 0 log 0 := 0. `n_sample` must equal the usable total of `counts`.
double tcm_description_length(const Taxonomy& t, const TreeCut& cut,
                              const ValueCounts& counts, std::uint64_t n_sample);

struct FindMdlOptions {
    // added to the per-parameter cost; nonzero only in the verify suite's
    // mutation mode
    double extra_param_cost = 0.0;
};

// Find-MDL: the cut (with MLE parameters) minimizing total description
// length over all tree cuts. Ties keep the finer cut.
TreeCutModel find_mdl(const Taxonomy& t, const ValueCounts& counts,
                      std::uint64_t n_sample, const FindMdlOptions& opts = {});

// Array-based variant used by callers that already resolved counts onto
// leaves; `leaf_counts` is consumed as scratch.
TreeCutModel find_mdl_resolved(const Taxonomy& t, std::vector<double> leaf_counts,
                               double n_sample, const FindMdlOptions& opts = {});

}  // namespace treecut
