#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "linfty/action.hpp"
#include "linfty/tensor.hpp"

namespace linfty {

bool operator==(const HomotopyStructure& a, const HomotopyStructure& b);

struct Settings {
    std::optional<int> bound;
    std::optional<int> max_arity;
    std::optional<std::uint64_t> seed;
    bool operator==(const Settings&) const = default;
};

struct ActionSection {
    /// "explicit", "adjoint_action" or "adjoint_representation".
    std::string kind;
    std::string acting;
    std::string on;  ///< empty for the adjoint kinds
    std::map<std::pair<int, int>, MultiMap> components;
    bool operator==(const ActionSection&) const = default;
};

/// Degree-zero components between two named spaces, used for tensors and
/// morphisms.
struct MapSection {
    std::string source;
    std::string target;
    Flavor flavor = Flavor::Plain;
    std::vector<MultiMap> components;  ///< arities 1..n, zero maps fill gaps
    bool operator==(const MapSection&) const = default;
};

/// A parsed structure-constant file. Spaces without a [structure] section are
/// abelian.
struct StructureFile {
    Settings settings;
    std::vector<GradedSpace> spaces;
    std::vector<HomotopyStructure> structures;
    std::optional<ActionSection> action;
    std::optional<MapSection> tensor;
    std::optional<MapSection> morphism;

    const GradedSpace& space(const std::string& name) const;
    /// The declared structure on a space, or the abelian one.
    HomotopyStructure structure(const std::string& name) const;
    bool has_structure(const std::string& name) const;
    /// Builds the action, resolving adjoint kinds against the acting structure.
    ActionFamily build_action() const;
    EmbeddingTensor build_tensor() const;
    bool operator==(const StructureFile&) const = default;
};

/// Parses the line-oriented format. Errors are InputError with a
/// "line L, column C: reason" prefix.
StructureFile parse_structure(std::string_view text);
StructureFile parse_structure_file(const std::string& path);
/// Canonical text: fixed section order, rows in basis order, no comments.
std::string serialize(const StructureFile& file);
/// A structure as one [structure] section, used for constructed outputs.
std::string serialize_structure(const HomotopyStructure& h);

}  // namespace linfty
