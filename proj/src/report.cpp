#include "linfty/report.hpp"

namespace linfty {

void Report::merge(const Report& other) {
    for (const Residual& r : other.residuals) residuals.push_back(r);
}

std::vector<std::string> support(const Report& r) {
    std::vector<std::string> out;
    for (const Residual& x : r.residuals) {
        std::string s = x.kind + ":";
        for (int b : x.blocks) s += std::to_string(b) + ",";
        s += "|";
        for (int i : x.word) s += std::to_string(i) + " ";
        out.push_back(std::move(s));
    }
    return out;
}

std::string residual_text(const Report& r, const Residual& x) {
    std::vector<std::size_t> cuts;
    std::size_t acc = 0;
    for (std::size_t b = 0; b + 1 < x.blocks.size(); ++b) cuts.push_back(acc += static_cast<std::size_t>(x.blocks[b]));
    std::string s = x.kind + " arity " + std::to_string(x.arity) + " on (";
    for (std::size_t i = 0; i < x.word.size(); ++i) {
        for (std::size_t c : cuts)
            if (c == i) s += "| ";
        s += r.input_space.symbol(x.word[i]);
        if (i + 1 < x.word.size()) s += " ";
    }
    // Scalar defects (tensor coefficients) are stored at coordinate 0.
    if (x.kind == "coleibniz") return s + ") -> " + (x.value.empty() ? "0" : to_string(x.value.begin()->second));
    return s + ") -> " + vector_text(r.output_space, x.value);
}

}  // namespace linfty
