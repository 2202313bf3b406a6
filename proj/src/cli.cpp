#include "linfty/cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <ostream>
#include <sstream>

#include "linfty/errors.hpp"
#include "linfty/random.hpp"
#include "linfty/structure_file.hpp"

namespace linfty::cli {

std::string digest(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

struct Options {
    std::string command;
    std::string path;
    std::string format = "text";
    std::string structure;
    std::optional<int> bound;
    std::optional<std::uint64_t> seed;
    std::optional<int> degree;
    std::optional<int> weight;
    bool timing = false;
};

struct Outcome {
    std::string verdict = "verified";
    int code = kVerified;
    std::vector<std::pair<std::string, std::string>> facts;
    std::vector<std::pair<std::string, Report>> reports;
    std::vector<std::string> sections;

    void add(const std::string& label, Report r) {
        if (!r.ok()) {
            verdict = "fails";
            code = kFails;
        }
        reports.emplace_back(label, std::move(r));
    }
};

struct Context {
    const StructureFile& file;
    const Options& options;
    int bound;
    std::uint64_t seed;
};

HomotopyStructure selected_structure(const Context& c) {
    if (!c.options.structure.empty()) return c.file.structure(c.options.structure);
    if (!c.file.structures.empty()) return c.file.structures.front();
    if (c.file.spaces.empty()) throw InputError("the file declares no space");
    return abelian_structure(c.file.spaces.front());
}

HomotopyStructure as_loday(const HomotopyStructure& h) {
    return h.flavor() == Flavor::Symmetric ? lie_to_loday(h) : h;
}

ActionFamily verified_action(const Context& c) {
    ActionFamily a = c.file.build_action();
    if (!check_action(a, c.bound).ok()) throw InputError("the [action] section is not a Lie infinity action");
    return a;
}

ActionFamily coherent_action(const Context& c) {
    ActionFamily a = verified_action(c);
    if (!check_coherence(a, c.bound).ok()) throw InputError("the action is not coherent");
    return a;
}

/// The acting structure of the action, else the selected one.
HomotopyStructure adjoint_base(const Context& c) {
    if (c.options.structure.empty() && c.file.action) return c.file.structure(c.file.action->acting);
    return selected_structure(c);
}

MultiMap strict_endomorphism(const Context& c, const HomotopyStructure& e) {
    if (!c.file.tensor) throw InputError("the file has no [tensor] section");
    const EmbeddingTensor t = c.file.build_tensor();
    if (!t.strict()) throw InputError("the tensor has components of arity >= 2");
    if (!(t.source() == e.space()) || !(t.target() == e.space()))
        throw InputError("the tensor is not an endomorphism of " + e.space().name());
    return t.max_arity() == 0 ? MultiMap(e.space(), e.space(), 1, 0, Flavor::Plain) : t.components().front();
}

std::string map_text(const MultiMap& m) {
    std::string s;
    for (const auto& [w, row] : m.rows())
        for (const auto& [j, x] : row)
            s += (s.empty() ? "" : ", ") + word_text(m.source(), w) + " -> " + m.target().symbol(j) + " : " + to_string(x);
    return s.empty() ? "0" : s;
}

Outcome check_lie(const Context& c) {
    Outcome o;
    const HomotopyStructure h = selected_structure(c);
    if (h.flavor() != Flavor::Symmetric) throw InputError("check-lie needs a symmetric structure");
    o.facts.emplace_back("structure", h.space().name());
    o.add("jacobi", check_lie_infinity(h, c.bound));
    return o;
}

Outcome check_loday(const Context& c) {
    Outcome o;
    const HomotopyStructure h = selected_structure(c);
    o.facts.emplace_back("structure", h.space().name());
    o.add("loday", check_loday_infinity(as_loday(h), c.bound));
    return o;
}

Outcome check_morphism(const Context& c) {
    if (!c.file.morphism) throw InputError("the file has no [morphism] section");
    const MapSection& m = *c.file.morphism;
    const HomotopyStructure src = c.file.structure(m.source);
    const HomotopyStructure tgt = c.file.structure(m.target);
    Outcome o;
    if (m.flavor == Flavor::Symmetric) {
        if (src.flavor() != Flavor::Symmetric || tgt.flavor() != Flavor::Symmetric)
            throw InputError("symmetric morphisms need symmetric structures");
        o.add("lie-morphism", check_lie_morphism(m.components, src, tgt, c.bound));
    } else {
        o.add("loday-morphism", check_loday_morphism(m.components, as_loday(src), as_loday(tgt), c.bound));
    }
    return o;
}

Outcome check_action_cmd(const Context& c) {
    Outcome o;
    o.add("action", check_action(c.file.build_action(), c.bound));
    return o;
}

Outcome check_coherence_cmd(const Context& c) {
    const TheoremVerdicts v = theorem_crosscheck(verified_action(c), c.bound);
    Outcome o;
    o.facts.emplace_back("hemisemidirect-loday", v.loday ? "yes" : "no");
    o.add("coherence", v.coherence);
    return o;
}

Outcome build_product(const Context& c) {
    const HomotopyStructure p = hemisemidirect(verified_action(c));
    Outcome o;
    o.verdict = "constructed";
    o.sections.push_back(serialize_structure(p));
    o.add("loday", check_loday_infinity(p, c.bound));
    return o;
}

Outcome check_tensor(const Context& c) {
    const EmbeddingVerdict v = check_embedding(c.file.build_tensor(), coherent_action(c), c.bound);
    Outcome o;
    o.facts.emplace_back("routes", "supports identical");
    o.add("explicit", v.explicit_route);
    o.add("maurer-cartan", v.mc_route);
    return o;
}

Outcome descend(const Context& c) {
    const HomotopyStructure q = descendent(c.file.build_tensor(), coherent_action(c), c.bound);
    Outcome o;
    o.verdict = "constructed";
    o.sections.push_back(serialize_structure(q));
    o.add("loday", check_loday_infinity(q, c.bound));
    return o;
}

Outcome check_descendent_morphism_cmd(const Context& c) {
    const ActionFamily a = coherent_action(c);
    const EmbeddingTensor t = c.file.build_tensor();
    if (!check_embedding_explicit(t, a, c.bound).ok()) throw InputError("the tensor is not an embedding tensor");
    Outcome o;
    o.add("loday-morphism", check_descendent_morphism(t, a, c.bound));
    return o;
}

Outcome adjoint_strict(const Context& c) {
    const HomotopyStructure e = adjoint_base(c);
    Outcome o;
    o.add("strict", adjoint_strict_check(e, strict_endomorphism(c, e)));
    return o;
}

Outcome centroid(const Context& c) {
    const HomotopyStructure e = adjoint_base(c);
    Outcome o;
    o.add("centroid", centroid_check(e, strict_endomorphism(c, e)));
    return o;
}

DeformationComplex verified_complex(const Context& c) {
    const ActionFamily a = coherent_action(c);
    const EmbeddingTensor t = c.file.build_tensor();
    if (!check_embedding_explicit(t, a, c.bound).ok()) throw InputError("the tensor is not an embedding tensor");
    return DeformationComplex(t, a, c.bound);
}

Outcome deform(const Context& c) {
    const DeformationComplex d = verified_complex(c);
    Outcome o;
    o.facts.emplace_back("basis", std::to_string(d.basis().size()));
    o.add("square-zero", d.square_zero());
    const GradedSpace& V = d.action().on().space();
    const GradedSpace& E = d.action().acting().space();
    Sampler s(c.seed);
    for (int i = 0; i < 8; ++i) {
        const MultiMap p = i == 0 ? MultiMap(V, E, 1, 0, Flavor::Plain) : random_multimap(s, V, E, 1, 0, Flavor::Plain, 0.4);
        const EmbeddingTensor tp(V, E, {p});
        const bool mc = d.mc_residual(d.from_tensor(tp)).values.empty();
        const bool direct = check_embedding_explicit(d.tensor() + tp, d.action(), c.bound).ok();
        if (mc != direct)
            throw InternalConsistencyError("Maurer-Cartan and direct verdicts differ for T' = " + map_text(p));
        o.facts.emplace_back("candidate " + std::to_string(i),
                             map_text(p) + " ; mc " + (mc ? "yes" : "no") + " ; direct " + (direct ? "yes" : "no"));
    }
    return o;
}

Outcome cohomology(const Context& c) {
    const DeformationComplex d = verified_complex(c);
    const int weight = c.options.weight.value_or(c.bound);
    if (weight < 1 || weight > c.bound) throw InputError("--weight must lie in 1..bound");
    Outcome o;
    for (const CohomologyPiece& p : d.cohomology_table(weight)) {
        if (c.options.degree && *c.options.degree != p.degree) continue;
        o.facts.emplace_back("piece degree " + std::to_string(p.degree) + " weight " + std::to_string(p.weight),
                             "dimension " + std::to_string(p.dimension) + " rank_in " + std::to_string(p.rank_in) +
                                 " rank_out " + std::to_string(p.rank_out) + " cohomology " +
                                 std::to_string(p.cohomology()));
    }
    return o;
}

const std::map<std::string, std::function<Outcome(const Context&)>>& commands() {
    static const std::map<std::string, std::function<Outcome(const Context&)>> table{
        {"check-lie", check_lie},
        {"check-loday", check_loday},
        {"check-morphism", check_morphism},
        {"check-action", check_action_cmd},
        {"check-coherence", check_coherence_cmd},
        {"build-product", build_product},
        {"check-tensor", check_tensor},
        {"descend", descend},
        {"check-descendent-morphism", check_descendent_morphism_cmd},
        {"adjoint-strict", adjoint_strict},
        {"centroid", centroid},
        {"deform", deform},
        {"cohomology", cohomology},
    };
    return table;
}

std::string blocks_text(const std::vector<int>& blocks) {
    if (blocks.empty()) return "-";
    std::string s;
    for (int b : blocks) s += (s.empty() ? "" : ",") + std::to_string(b);
    return s;
}

void render_text(std::ostream& out, const Options& o, const std::string& dig, int bound, std::uint64_t seed,
                 const Outcome& r) {
    out << "command " << o.command << '\n'
        << "digest " << dig << '\n'
        << "bound " << bound << '\n'
        << "seed " << seed << '\n'
        << "verdict " << r.verdict << '\n';
    for (const auto& [k, v] : r.facts) out << k << ": " << v << '\n';
    for (const auto& [label, rep] : r.reports) {
        out << label << ": " << rep.residuals.size() << " residual" << (rep.residuals.size() == 1 ? "" : "s") << '\n';
        for (const Residual& x : rep.residuals) out << "  " << residual_text(rep, x) << '\n';
    }
    for (const std::string& s : r.sections) out << s;
}

void render_machine(std::ostream& out, const Options& o, const std::string& dig, int bound, std::uint64_t seed,
                    const Outcome& r) {
    out << "[report]\n"
        << "command " << o.command << '\n'
        << "digest " << dig << '\n'
        << "bound " << bound << '\n'
        << "seed " << seed << '\n'
        << "verdict " << r.verdict << '\n'
        << "exit " << r.code << '\n';
    for (const auto& [k, v] : r.facts) out << "[fact]\nkey " << k << "\nvalue " << v << '\n';
    for (const auto& [label, rep] : r.reports) {
        out << "[check]\nlabel " << label << "\nresiduals " << rep.residuals.size() << '\n';
        for (const Residual& x : rep.residuals) {
            out << "[residual]\n"
                << "label " << label << '\n'
                << "kind " << x.kind << '\n'
                << "arity " << x.arity << '\n'
                << "blocks " << blocks_text(x.blocks) << '\n'
                << "word " << word_text(rep.input_space, x.word) << '\n';
            if (x.kind == "coleibniz")
                out << "value " << to_string(x.value.empty() ? Scalar(0) : x.value.begin()->second) << '\n';
            else
                out << "value " << vector_text(rep.output_space, x.value) << '\n';
        }
    }
    for (const std::string& s : r.sections) out << s;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    Options o;
    CLI::App app{"Exact checks for Lie and Loday infinity structures, actions and embedding tensors", "linfty"};
    std::vector<std::string> names;
    for (const auto& [name, fn] : commands()) names.push_back(name);
    app.add_option("command", o.command, "One of: " + CLI::detail::join(names, ", "))
        ->required()
        ->check(CLI::IsMember(names));
    app.add_option("file", o.path, "Structure-constant file")->required();
    app.add_option("--bound", o.bound, "Weight bound N")->check(CLI::Range(1, 12));
    app.add_option("--seed", o.seed, "Seed for sampled candidates");
    app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "machine"}));
    app.add_option("--structure", o.structure, "Space whose structure a single-structure command uses");
    app.add_option("--degree", o.degree, "cohomology: only this degree");
    app.add_option("--weight", o.weight, "cohomology: input length bound of the pieces");
    app.add_flag("--timing", o.timing, "Append the wall time (makes reports nondeterministic)");
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kInputError;
    }

    const auto start = std::chrono::steady_clock::now();
    try {
        const StructureFile file = parse_structure_file(o.path);
        const int bound = o.bound.value_or(file.settings.bound.value_or(4));
        const std::uint64_t seed = o.seed.value_or(file.settings.seed.value_or(kDefaultSeed));
        const Outcome r = commands().at(o.command)(Context{file, o, bound, seed});
        const std::string dig = digest(serialize(file));
        std::ostringstream text;
        if (o.format == "machine") render_machine(text, o, dig, bound, seed, r);
        else render_text(text, o, dig, bound, seed, r);
        if (o.timing) {
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.3f", secs);
            text << (o.format == "machine" ? "[timing]\nseconds " : "time ") << buf << (o.format == "machine" ? "\n" : "s\n");
        }
        out << text.str();
        return r.code;
    } catch (const InputError& e) {
        err << "input error: " << e.what() << '\n';
        return kInputError;
    } catch (const InternalConsistencyError& e) {
        err << "internal consistency error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace linfty::cli
