#pragma once

#include <string>
#include <vector>

#include "linfty/chain.hpp"

namespace linfty {

/// One nonzero defect of an identity: which identity failed (kind), at which
/// arity, on which basis input, with what output.
struct Residual {
    std::string kind;
    int arity = 0;
    Word word;                ///< letters of Report::input_space
    std::vector<int> blocks;  ///< lengths of consecutive input blocks, empty for one block
    Vector value;             ///< coordinates in Report::output_space; kind "coleibniz" keeps a scalar at 0

    bool operator==(const Residual&) const = default;
};

/// Residuals of an identity checked on all basis inputs up to a weight bound.
struct Report {
    GradedSpace input_space;
    GradedSpace output_space;
    int bound = 0;
    std::vector<Residual> residuals;

    bool ok() const { return residuals.empty(); }
    void add(Residual r) {
        if (!r.value.empty()) residuals.push_back(std::move(r));
    }
    void merge(const Report& other);
};

/// (kind, blocks, word) of every residual, used to compare failure supports.
std::vector<std::string> support(const Report& r);

std::string residual_text(const Report& r, const Residual& x);

}  // namespace linfty
