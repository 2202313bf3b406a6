#include "linfty/structure_file.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <fstream>
#include <sstream>

#include "linfty/errors.hpp"

namespace linfty {

bool operator==(const HomotopyStructure& a, const HomotopyStructure& b) {
    return a.space() == b.space() && a.flavor() == b.flavor() && a.max_arity() == b.max_arity() &&
           a.brackets() == b.brackets();
}

const GradedSpace& StructureFile::space(const std::string& name) const {
    for (const GradedSpace& s : spaces)
        if (s.name() == name) return s;
    throw InputError("unknown space " + name);
}

bool StructureFile::has_structure(const std::string& name) const {
    return std::any_of(structures.begin(), structures.end(),
                       [&](const HomotopyStructure& h) { return h.space().name() == name; });
}

HomotopyStructure StructureFile::structure(const std::string& name) const {
    for (const HomotopyStructure& h : structures)
        if (h.space().name() == name) return h;
    return abelian_structure(space(name));
}

ActionFamily StructureFile::build_action() const {
    if (!action) throw InputError("the file has no [action] section");
    if (action->kind == "adjoint_action") return adjoint_action(structure(action->acting));
    if (action->kind == "adjoint_representation") return adjoint_representation(structure(action->acting));
    return ActionFamily(structure(action->acting), structure(action->on), action->components);
}

EmbeddingTensor StructureFile::build_tensor() const {
    if (!tensor) throw InputError("the file has no [tensor] section");
    return EmbeddingTensor(space(tensor->source), space(tensor->target), tensor->components);
}

namespace {

struct Token {
    std::string text;
    int column = 0;
};

std::vector<Token> tokenize(std::string_view line) {
    std::vector<Token> out;
    std::size_t i = 0;
    auto special = [&](std::size_t j) {
        return line[j] == ':' || line[j] == ';' || (line[j] == '-' && j + 1 < line.size() && line[j + 1] == '>');
    };
    while (i < line.size()) {
        const char c = line[i];
        if (c == '#') break;
        if (c == ' ' || c == '\t' || c == '\r') {
            ++i;
            continue;
        }
        const int column = static_cast<int>(i) + 1;
        if (special(i)) {
            const std::size_t n = line[i] == '-' ? 2 : 1;
            out.push_back({std::string(line.substr(i, n)), column});
            i += n;
            continue;
        }
        std::size_t j = i;
        while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r' && line[j] != '#' && !special(j))
            ++j;
        out.push_back({std::string(line.substr(i, j - i)), column});
        i = j;
    }
    return out;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    StructureFile run() {
        std::size_t start = 0;
        while (start <= text_.size()) {
            const std::size_t end = std::min(text_.find('\n', start), text_.size());
            ++line_;
            const std::vector<Token> tokens = tokenize(text_.substr(start, end - start));
            if (!tokens.empty()) line(tokens);
            start = end + 1;
        }
        finish_section();
        return std::move(file_);
    }

private:
    [[noreturn]] void fail(const Token& at, const std::string& reason) const {
        throw InputError("line " + std::to_string(line_) + ", column " + std::to_string(at.column) + ": " + reason);
    }

    int integer(const Token& t) const {
        int v = 0;
        const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size()) fail(t, "expected an integer, got '" + t.text + "'");
        return v;
    }

    std::uint64_t unsigned_integer(const Token& t) const {
        std::uint64_t v = 0;
        const auto [p, ec] = std::from_chars(t.text.data(), t.text.data() + t.text.size(), v);
        if (ec != std::errc() || p != t.text.data() + t.text.size())
            fail(t, "expected a nonnegative integer, got '" + t.text + "'");
        return v;
    }

    Scalar scalar(const Token& t) const {
        try {
            return parse_scalar(t.text);
        } catch (const InputError& e) {
            fail(t, e.what());
        }
    }

    int letter(const GradedSpace& space, const Token& t) const {
        const auto i = space.index_of(t.text);
        if (!i) fail(t, "unknown symbol '" + t.text + "' in space " + space.name());
        return *i;
    }

    const GradedSpace& known_space(const Token& t) const {
        for (const GradedSpace& s : file_.spaces)
            if (s.name() == t.text) return s;
        fail(t, "unknown space '" + t.text + "'");
    }

    void expect_count(const std::vector<Token>& tokens, std::size_t n) const {
        if (tokens.size() != n) fail(tokens.back(), "expected " + std::to_string(n) + " fields");
    }

    void line(const std::vector<Token>& tokens) {
        const Token& head = tokens.front();
        if (head.text.front() == '[') {
            header(tokens);
            return;
        }
        if (section_.empty()) fail(head, "content before the first section header");
        if (section_ == "settings") settings_line(tokens);
        else if (section_ == "space") space_line(tokens);
        else if (section_ == "structure") structure_line(tokens);
        else if (section_ == "action") action_line(tokens);
        else map_line(tokens);
    }

    void header(const std::vector<Token>& tokens) {
        finish_section();
        std::string joined;
        for (const Token& t : tokens) joined += (joined.empty() ? "" : " ") + t.text;
        if (joined.size() < 2 || joined.back() != ']') fail(tokens.front(), "malformed section header");
        std::istringstream in(joined.substr(1, joined.size() - 2));
        std::string name, arg, extra;
        in >> name >> arg >> extra;
        if (!extra.empty()) fail(tokens.front(), "too many words in section header");
        const bool named = name == "space" || name == "structure";
        if (named != !arg.empty()) fail(tokens.front(), named ? "section [" + name + "] needs a space name" : "section [" + name + "] takes no argument");
        section_ = name;
        arg_ = arg;
        header_ = tokens.front();
        seen_entries_ = false;
        if (name == "settings") {
            if (seen_settings_) fail(header_, "duplicate [settings] section");
            seen_settings_ = true;
        } else if (name == "space") {
            for (const GradedSpace& s : file_.spaces)
                if (s.name() == arg) fail(header_, "duplicate space " + arg);
            basis_.clear();
        } else if (name == "structure") {
            if (file_.has_structure(arg)) fail(header_, "duplicate structure on " + arg);
            known_space(Token{arg, header_.column});
            flavor_ = Flavor::Symmetric;
            max_arity_.reset();
            maps_.clear();
        } else if (name == "action") {
            if (file_.action) fail(header_, "duplicate [action] section");
            action_ = ActionSection{};
        } else if (name == "tensor" || name == "morphism") {
            if ((name == "tensor" ? file_.tensor : file_.morphism)) fail(header_, "duplicate [" + name + "] section");
            map_ = MapSection{};
            maps_.clear();
        } else {
            fail(tokens.front(), "unknown section [" + name + "]");
        }
    }

    void settings_line(const std::vector<Token>& t) {
        expect_count(t, 2);
        Settings& s = file_.settings;
        if (t[0].text == "bound") {
            if (s.bound) fail(t[0], "duplicate key bound");
            s.bound = integer(t[1]);
            if (*s.bound < 1) fail(t[1], "bound must be positive");
        } else if (t[0].text == "max_arity") {
            if (s.max_arity) fail(t[0], "duplicate key max_arity");
            s.max_arity = integer(t[1]);
            if (*s.max_arity < 1) fail(t[1], "max_arity must be positive");
        } else if (t[0].text == "seed") {
            if (s.seed) fail(t[0], "duplicate key seed");
            s.seed = unsigned_integer(t[1]);
        } else {
            fail(t[0], "unknown key '" + t[0].text + "' in [settings]");
        }
    }

    void space_line(const std::vector<Token>& t) {
        expect_count(t, 2);
        for (const BasisElement& b : basis_)
            if (b.symbol == t[0].text) fail(t[0], "duplicate symbol " + t[0].text);
        const char c = t[0].text.front();
        if (!(std::isalpha(static_cast<unsigned char>(c)) || c == '_')) fail(t[0], "symbols start with a letter");
        basis_.push_back({t[0].text, integer(t[1])});
    }

    // Parses "a b ... -> c : p/q"; inputs come back as tokens.
    struct Entry {
        std::vector<Token> inputs;
        std::vector<Token> more;  ///< inputs after ';' in action entries
        Token output;
        Scalar value;
    };

    Entry entry(const std::vector<Token>& t, bool split) const {
        Entry e;
        std::size_t i = 0;
        bool after_split = false;
        for (; i < t.size() && t[i].text != "->"; ++i) {
            if (t[i].text == ";") {
                if (!split || after_split) fail(t[i], "unexpected ';'");
                after_split = true;
                continue;
            }
            if (t[i].text == ":") fail(t[i], "missing '->'");
            (after_split ? e.more : e.inputs).push_back(t[i]);
        }
        if (i == t.size()) fail(t.back(), "missing '->'");
        if (split && (!after_split || e.inputs.empty() || e.more.empty()))
            fail(t.front(), "action entries read 'x ... ; v ... -> w : p/q'");
        if (!split && e.inputs.empty()) fail(t[i], "entry without inputs");
        if (i + 4 != t.size() || t[i + 2].text != ":") fail(t[i], "entries end with '-> symbol : p/q'");
        e.output = t[i + 1];
        e.value = scalar(t[i + 3]);
        if (sgn(e.value) == 0) fail(t[i + 3], "zero constants are not written");
        return e;
    }

    void put(MultiMap& m, const Word& key, int output, const Scalar& value, const Token& at) const {
        const auto row = m.rows().find(key);
        if (row != m.rows().end() && row->second.count(output)) fail(at, "duplicate entry");
        try {
            m.set(key, output, value);
        } catch (const InputError& e) {
            fail(at, e.what());
        }
    }

    MultiMap& slot(int arity, const GradedSpace& source, const GradedSpace& target, int degree, Flavor flavor) {
        auto it = maps_.find(arity);
        if (it == maps_.end()) it = maps_.emplace(arity, MultiMap(source, target, arity, degree, flavor)).first;
        return it->second;
    }

    bool option(const std::vector<Token>& t, const char* key) const {
        if (t[0].text != key) return false;
        if (seen_entries_) fail(t[0], std::string(key) + " must precede the entries");
        expect_count(t, 2);
        return true;
    }

    Flavor flavor_value(const Token& t) const {
        if (t.text == "symmetric") return Flavor::Symmetric;
        if (t.text == "plain") return Flavor::Plain;
        fail(t, "flavor is symmetric or plain");
    }

    void structure_line(const std::vector<Token>& t) {
        if (option(t, "flavor")) {
            flavor_ = flavor_value(t[1]);
            return;
        }
        if (option(t, "max_arity")) {
            max_arity_ = integer(t[1]);
            if (*max_arity_ < 0) fail(t[1], "max_arity must be nonnegative");
            return;
        }
        seen_entries_ = true;
        const GradedSpace& space = known_space(Token{arg_, header_.column});
        const Entry e = entry(t, false);
        const int arity = static_cast<int>(e.inputs.size());
        if (max_arity_ && arity > *max_arity_) fail(t.front(), "bracket arity exceeds max_arity");
        Word key;
        for (const Token& x : e.inputs) key.push_back(letter(space, x));
        put(slot(arity, space, space, 1, flavor_), key, letter(space, e.output), e.value, t.front());
    }

    void action_line(const std::vector<Token>& t) {
        ActionSection& a = *action_;
        if (option(t, "kind")) {
            const std::string& k = t[1].text;
            if (k != "explicit" && k != "adjoint_action" && k != "adjoint_representation")
                fail(t[1], "kind is explicit, adjoint_action or adjoint_representation");
            a.kind = k;
            return;
        }
        if (option(t, "acting")) {
            a.acting = known_space(t[1]).name();
            return;
        }
        if (option(t, "on")) {
            a.on = known_space(t[1]).name();
            return;
        }
        seen_entries_ = true;
        if (a.kind != "explicit") fail(t.front(), "entries need 'kind explicit'");
        if (a.acting.empty() || a.on.empty()) fail(t.front(), "entries need 'acting' and 'on' first");
        const GradedSpace& E = file_.space(a.acting);
        const GradedSpace& V = file_.space(a.on);
        const Entry e = entry(t, true);
        Word key;
        for (const Token& x : e.inputs) key.push_back(letter(E, x));
        for (const Token& v : e.more) key.push_back(letter(V, v) + E.dim());
        const std::pair<int, int> kn{static_cast<int>(e.inputs.size()), static_cast<int>(e.more.size())};
        auto it = a.components.find(kn);
        if (it == a.components.end())
            it = a.components.emplace(kn, action_component(direct_sum(E, V), V, kn.first, kn.second)).first;
        put(it->second, key, letter(V, e.output), e.value, t.front());
    }

    void map_line(const std::vector<Token>& t) {
        MapSection& m = *map_;
        if (option(t, "source")) {
            m.source = known_space(t[1]).name();
            return;
        }
        if (option(t, "target")) {
            m.target = known_space(t[1]).name();
            return;
        }
        if (section_ == "morphism" && option(t, "flavor")) {
            m.flavor = flavor_value(t[1]);
            return;
        }
        seen_entries_ = true;
        if (m.source.empty() || m.target.empty()) fail(t.front(), "entries need 'source' and 'target' first");
        const GradedSpace& S = file_.space(m.source);
        const GradedSpace& T = file_.space(m.target);
        const Entry e = entry(t, false);
        Word key;
        for (const Token& x : e.inputs) key.push_back(letter(S, x));
        put(slot(static_cast<int>(key.size()), S, T, 0, m.flavor), key, letter(T, e.output), e.value, t.front());
    }

    void finish_section() {
        if (section_ == "space") {
            file_.spaces.emplace_back(arg_, basis_);
        } else if (section_ == "structure") {
            const int top = max_arity_.value_or(maps_.empty() ? 0 : maps_.rbegin()->first);
            if (file_.settings.max_arity && top > *file_.settings.max_arity)
                fail(header_, "structure on " + arg_ + " exceeds the max_arity setting");
            std::vector<MultiMap> brackets;
            for (auto& [k, m] : maps_) brackets.push_back(std::move(m));
            file_.structures.emplace_back(file_.space(arg_), flavor_, top, brackets);
        } else if (section_ == "action") {
            if (action_->kind.empty()) fail(header_, "[action] needs a kind");
            if (action_->acting.empty()) fail(header_, "[action] needs an acting space");
            if (action_->kind == "explicit" && action_->on.empty()) fail(header_, "explicit actions need 'on'");
            if (action_->kind != "explicit" && !action_->on.empty()) fail(header_, "adjoint kinds take no 'on'");
            file_.action = std::move(action_);
        } else if (section_ == "tensor" || section_ == "morphism") {
            if (map_->source.empty() || map_->target.empty()) fail(header_, "[" + section_ + "] needs source and target");
            const int top = maps_.empty() ? 0 : maps_.rbegin()->first;
            const GradedSpace& S = file_.space(map_->source);
            const GradedSpace& T = file_.space(map_->target);
            for (int k = 1; k <= top; ++k) {
                auto it = maps_.find(k);
                map_->components.push_back(it == maps_.end() ? MultiMap(S, T, k, 0, map_->flavor) : std::move(it->second));
            }
            (section_ == "tensor" ? file_.tensor : file_.morphism) = std::move(map_);
        }
        section_.clear();
        action_.reset();
        map_.reset();
        maps_.clear();
    }

    std::string_view text_;
    int line_ = 0;
    StructureFile file_;
    std::string section_;
    std::string arg_;
    Token header_;
    bool seen_entries_ = false;
    bool seen_settings_ = false;
    std::vector<BasisElement> basis_;
    Flavor flavor_ = Flavor::Symmetric;
    std::optional<int> max_arity_;
    std::map<int, MultiMap> maps_;
    std::optional<ActionSection> action_;
    std::optional<MapSection> map_;
};

void write_rows(std::ostringstream& out, const MultiMap& m, const GradedSpace& source, const GradedSpace& target) {
    for (const auto& [w, row] : m.rows())
        for (const auto& [j, c] : row) {
            for (int i : w) out << source.symbol(i) << ' ';
            out << "-> " << target.symbol(j) << " : " << to_string(c) << '\n';
        }
}

void write_structure(std::ostringstream& out, const HomotopyStructure& h) {
    out << "[structure " << h.space().name() << "]\n";
    out << "flavor " << flavor_name(h.flavor()) << '\n';
    out << "max_arity " << h.max_arity() << '\n';
    for (const MultiMap& m : h.brackets()) write_rows(out, m, h.space(), h.space());
}

void write_map(std::ostringstream& out, const char* name, const MapSection& m, const StructureFile& f, bool flavor) {
    out << '[' << name << "]\n";
    out << "source " << m.source << '\n' << "target " << m.target << '\n';
    if (flavor) out << "flavor " << flavor_name(m.flavor) << '\n';
    for (const MultiMap& c : m.components) write_rows(out, c, f.space(m.source), f.space(m.target));
}

}  // namespace

StructureFile parse_structure(std::string_view text) { return Parser(text).run(); }

StructureFile parse_structure_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot read " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return parse_structure(buffer.str());
}

std::string serialize_structure(const HomotopyStructure& h) {
    std::ostringstream out;
    write_structure(out, h);
    return out.str();
}

std::string serialize(const StructureFile& f) {
    std::ostringstream out;
    bool first = true;
    auto gap = [&] {
        if (!first) out << '\n';
        first = false;
    };
    if (f.settings.bound || f.settings.max_arity || f.settings.seed) {
        gap();
        out << "[settings]\n";
        if (f.settings.bound) out << "bound " << *f.settings.bound << '\n';
        if (f.settings.max_arity) out << "max_arity " << *f.settings.max_arity << '\n';
        if (f.settings.seed) out << "seed " << *f.settings.seed << '\n';
    }
    for (const GradedSpace& s : f.spaces) {
        gap();
        out << "[space " << s.name() << "]\n";
        for (const BasisElement& b : s.basis()) out << b.symbol << ' ' << b.degree << '\n';
    }
    for (const HomotopyStructure& h : f.structures) {
        gap();
        write_structure(out, h);
    }
    if (f.action) {
        gap();
        const ActionSection& a = *f.action;
        out << "[action]\n" << "kind " << a.kind << '\n' << "acting " << a.acting << '\n';
        if (!a.on.empty()) {
            out << "on " << a.on << '\n';
            const GradedSpace& E = f.space(a.acting);
            const GradedSpace& V = f.space(a.on);
            for (const auto& [kn, m] : a.components) {
                for (const auto& [w, row] : m.rows())
                    for (const auto& [j, c] : row) {
                        for (std::size_t i = 0; i < w.size(); ++i) {
                            if (static_cast<int>(i) == kn.first) out << "; ";
                            out << (w[i] < E.dim() ? E.symbol(w[i]) : V.symbol(w[i] - E.dim())) << ' ';
                        }
                        out << "-> " << V.symbol(j) << " : " << to_string(c) << '\n';
                    }
            }
        }
    }
    if (f.tensor) {
        gap();
        write_map(out, "tensor", *f.tensor, f, false);
    }
    if (f.morphism) {
        gap();
        write_map(out, "morphism", *f.morphism, f, true);
    }
    return out.str();
}

}  // namespace linfty
