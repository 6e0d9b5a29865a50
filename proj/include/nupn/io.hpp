#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "nupn/backward.hpp"
#include "nupn/canonical.hpp"
#include "nupn/forward.hpp"
#include "nupn/net.hpp"
#include "nupn/pt.hpp"
#include "nupn/reductions.hpp"

namespace nupn {

struct ParseError : Error {
    ParseError(std::size_t line, std::size_t column, const std::string& message)
        : Error(std::to_string(line) + ":" + std::to_string(column) + ": " + message), line(line), column(column) {}
    std::size_t line;
    std::size_t column;
};

enum class NetKind { nu, pt, inhibitor, reset };

inline const char* to_string(NetKind k) {
    switch (k) {
    case NetKind::nu: return "nu";
    case NetKind::pt: return "pt";
    case NetKind::inhibitor: return "inhibitor";
    case NetKind::reset: return "reset";
    }
    return "?";
}

enum class ArcType { flow, inhibit, reset };

struct ArcDecl {
    ArcType type = ArcType::flow;
    bool into_transition = true; // place -> transition
    std::string place;
    std::string transition;
    std::vector<std::string> vars;
    friend bool operator==(const ArcDecl&, const ArcDecl&) = default;
};

struct MarkingDecl {
    std::string place;
    std::map<std::string, std::uint32_t> tokens; // name -> count, "." is "•"
    friend bool operator==(const MarkingDecl&, const MarkingDecl&) = default;
};

/// Syntax tree of a net file. Keeps declaration order so rendering is
/// deterministic.
struct NetDocument {
    NetKind kind = NetKind::nu;
    std::string name;
    std::vector<std::string> comments;
    std::vector<std::string> places;
    std::vector<std::string> transitions;
    std::vector<ArcDecl> arcs;
    std::vector<MarkingDecl> markings;
    friend bool operator==(const NetDocument&, const NetDocument&) = default;
};

/// `nu`, `nu<digits>` and `nu_<suffix>` name fresh variables.
inline bool is_fresh_variable(std::string_view v) {
    if (v.substr(0, 2) != "nu") return false;
    if (v.size() == 2) return true;
    return std::isdigit(static_cast<unsigned char>(v[2])) || v[2] == '_';
}

/// `_<digits>` is how names without a textual form are written.
inline bool is_generated_name(std::string_view s) {
    return s.size() > 1 && s[0] == '_' &&
           std::all_of(s.begin() + 1, s.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
}

namespace detail {

struct Token {
    enum class Kind { ident, number, symbol, end } kind = Kind::end;
    std::string text;
    std::size_t column = 0;
};

class LineLexer {
public:
    LineLexer(std::string_view line, std::size_t line_no) : line_(line), line_no_(line_no) { advance(); }

    const Token& peek() const { return current_; }

    Token next() {
        Token t = current_;
        advance();
        return t;
    }

    [[noreturn]] void fail(const Token& at, const std::string& msg) const { throw ParseError(line_no_, at.column, msg); }

    Token expect_ident(const char* what) {
        if (current_.kind != Token::Kind::ident) fail(current_, std::string("expected ") + what);
        return next();
    }

    void expect_symbol(std::string_view sym) {
        if (current_.kind != Token::Kind::symbol || current_.text != sym)
            fail(current_, "expected '" + std::string(sym) + "'");
        next();
    }

    bool accept_symbol(std::string_view sym) {
        if (current_.kind == Token::Kind::symbol && current_.text == sym) {
            next();
            return true;
        }
        return false;
    }

    void expect_end() {
        if (current_.kind != Token::Kind::end) fail(current_, "unexpected '" + current_.text + "'");
    }

    std::size_t line() const { return line_no_; }

private:
    void advance() {
        while (pos_ < line_.size() && std::isspace(static_cast<unsigned char>(line_[pos_]))) ++pos_;
        current_ = Token{};
        current_.column = pos_ + 1;
        if (pos_ >= line_.size() || line_[pos_] == '#') {
            current_.kind = Token::Kind::end;
            return;
        }
        const char c = line_[pos_];
        auto ident_char = [](char ch) { return std::isalnum(static_cast<unsigned char>(ch)) || ch == '_'; };
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            auto start = pos_;
            while (pos_ < line_.size() && ident_char(line_[pos_])) ++pos_;
            current_.kind = Token::Kind::ident;
            current_.text = std::string(line_.substr(start, pos_ - start));
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            auto start = pos_;
            while (pos_ < line_.size() && std::isdigit(static_cast<unsigned char>(line_[pos_]))) ++pos_;
            current_.kind = Token::Kind::number;
            current_.text = std::string(line_.substr(start, pos_ - start));
        } else if (c == '-' && pos_ + 1 < line_.size() && line_[pos_ + 1] == '>') {
            current_.kind = Token::Kind::symbol;
            current_.text = "->";
            pos_ += 2;
        } else if (std::string_view("{}:,=.").find(c) != std::string_view::npos) {
            current_.kind = Token::Kind::symbol;
            current_.text = std::string(1, c);
            ++pos_;
        } else {
            throw ParseError(line_no_, pos_ + 1, std::string("unexpected character '") + c + "'");
        }
    }

    std::string_view line_;
    std::size_t line_no_;
    std::size_t pos_ = 0;
    Token current_;
};

/// Parses `{name:count, ...}` (braces included).
inline std::map<std::string, std::uint32_t> parse_tokens(LineLexer& lx) {
    std::map<std::string, std::uint32_t> tokens;
    lx.expect_symbol("{");
    if (lx.accept_symbol("}")) return tokens;
    do {
        std::string name;
        auto at = lx.peek();
        if (lx.accept_symbol("."))
            name = ".";
        else
            name = lx.expect_ident("a name or '.'").text;
        std::uint32_t count = 1;
        if (lx.accept_symbol(":")) {
            auto num = lx.next();
            if (num.kind != Token::Kind::number) lx.fail(num, "expected a count");
            try {
                count = static_cast<std::uint32_t>(std::stoul(num.text));
            } catch (const std::exception&) {
                lx.fail(num, "count out of range");
            }
        }
        if (is_generated_name(name)) lx.fail(at, "names of the form _<digits> are reserved");
        tokens[name] += count;
    } while (lx.accept_symbol(","));
    lx.expect_symbol("}");
    std::erase_if(tokens, [](const auto& e) { return e.second == 0; });
    return tokens;
}

inline std::vector<std::string> split_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        lines.push_back(std::move(line));
    }
    return lines;
}

inline bool is_comment_line(const std::string& line) {
    auto first = line.find_first_not_of(" \t");
    return first != std::string::npos && line[first] == '#';
}

inline bool is_blank(const std::string& line) { return line.find_first_not_of(" \t") == std::string::npos; }

inline MarkingDecl parse_marking_line(LineLexer& lx) {
    MarkingDecl m;
    m.place = lx.expect_ident("a place").text;
    lx.expect_symbol("=");
    m.tokens = parse_tokens(lx);
    lx.expect_end();
    return m;
}

} // namespace detail

/// Parses the line-oriented net format:
///
///     net <nu|pt|inhibitor|reset> <name>
///     place <id>
///     trans <id>
///     arc <place> -> <trans> [vars...]
///     arc <trans> -> <place> [vars...]
///     inhibit <place> -> <trans>
///     reset <place> -> <trans>
///     marking <place> = {name:count, ...}
///
/// `#` starts a comment; full-line comments after the header are kept.
inline NetDocument parse(const std::string& text) {
    NetDocument doc;
    bool have_header = false;
    std::map<std::string, bool> is_place; // declared identifiers
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        const auto line_no = i + 1;
        if (detail::is_blank(line)) continue;
        if (detail::is_comment_line(line)) {
            if (have_header) {
                auto body = line.substr(line.find('#') + 1);
                if (!body.empty() && body.front() == ' ') body.erase(0, 1);
                doc.comments.push_back(body);
            }
            continue;
        }
        detail::LineLexer lx(line, line_no);
        auto kw = lx.expect_ident("a keyword");
        if (!have_header) {
            if (kw.text != "net") lx.fail(kw, "expected 'net <kind> <name>' first");
            auto kind = lx.expect_ident("a net kind");
            if (kind.text == "nu")
                doc.kind = NetKind::nu;
            else if (kind.text == "pt")
                doc.kind = NetKind::pt;
            else if (kind.text == "inhibitor")
                doc.kind = NetKind::inhibitor;
            else if (kind.text == "reset")
                doc.kind = NetKind::reset;
            else
                lx.fail(kind, "unknown net kind '" + kind.text + "'");
            doc.name = lx.expect_ident("a net name").text;
            lx.expect_end();
            have_header = true;
            continue;
        }
        auto declared = [&](const detail::Token& t, bool want_place) {
            auto it = is_place.find(t.text);
            if (it == is_place.end())
                lx.fail(t, std::string("undeclared ") + (want_place ? "place" : "transition") + " '" + t.text + "'");
            if (it->second != want_place)
                lx.fail(t, "'" + t.text + "' is a " + (it->second ? "place" : "transition"));
        };
        if (kw.text == "place" || kw.text == "trans") {
            auto id = lx.expect_ident("an identifier");
            lx.expect_end();
            if (is_place.count(id.text)) lx.fail(id, "duplicate declaration of '" + id.text + "'");
            const bool place = kw.text == "place";
            is_place[id.text] = place;
            (place ? doc.places : doc.transitions).push_back(id.text);
        } else if (kw.text == "arc") {
            auto from = lx.expect_ident("a place or transition");
            lx.expect_symbol("->");
            auto to = lx.expect_ident("a place or transition");
            ArcDecl arc;
            auto it = is_place.find(from.text);
            if (it == is_place.end()) lx.fail(from, "undeclared identifier '" + from.text + "'");
            arc.into_transition = it->second;
            declared(from, arc.into_transition);
            declared(to, !arc.into_transition);
            arc.place = arc.into_transition ? from.text : to.text;
            arc.transition = arc.into_transition ? to.text : from.text;
            while (lx.peek().kind == detail::Token::Kind::ident) {
                auto v = lx.next();
                if (doc.kind == NetKind::nu) {
                    if (arc.into_transition && is_fresh_variable(v.text)) lx.fail(v, "fresh variable on input arc");
                } else {
                    if (is_fresh_variable(v.text))
                        lx.fail(v, std::string("fresh variables are not allowed in ") + to_string(doc.kind) + " nets");
                    if (doc.kind != NetKind::pt && !arc.vars.empty())
                        lx.fail(v, std::string("arcs of ") + to_string(doc.kind) + " nets have weight 1");
                }
                arc.vars.push_back(v.text);
            }
            lx.expect_end();
            doc.arcs.push_back(std::move(arc));
        } else if (kw.text == "inhibit" || kw.text == "reset") {
            const bool inhibit = kw.text == "inhibit";
            if (doc.kind != (inhibit ? NetKind::inhibitor : NetKind::reset))
                lx.fail(kw, "'" + kw.text + "' arcs are not allowed in " + to_string(doc.kind) + " nets");
            auto p = lx.expect_ident("a place");
            lx.expect_symbol("->");
            auto t = lx.expect_ident("a transition");
            lx.expect_end();
            declared(p, true);
            declared(t, false);
            doc.arcs.push_back(ArcDecl{inhibit ? ArcType::inhibit : ArcType::reset, true, p.text, t.text, {}});
        } else if (kw.text == "marking") {
            auto at = lx.peek();
            auto m = detail::parse_marking_line(lx);
            declared(detail::Token{detail::Token::Kind::ident, m.place, at.column}, true);
            if (doc.kind != NetKind::nu)
                for (const auto& [name, n] : m.tokens)
                    if (name != ".") lx.fail(at, std::string(to_string(doc.kind)) + " nets only carry '.' tokens");
            for (const auto& other : doc.markings)
                if (other.place == m.place) lx.fail(at, "duplicate marking for '" + m.place + "'");
            doc.markings.push_back(std::move(m));
        } else {
            lx.fail(kw, "unknown keyword '" + kw.text + "'");
        }
    }
    if (!have_header) throw ParseError(lines.size() + 1, 1, "missing 'net <kind> <name>' header");
    return doc;
}

/// Parses a target file: `marking` lines and comments only.
inline std::vector<MarkingDecl> parse_markings(const std::string& text) {
    std::vector<MarkingDecl> out;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        if (detail::is_blank(lines[i]) || detail::is_comment_line(lines[i])) continue;
        detail::LineLexer lx(lines[i], i + 1);
        auto kw = lx.expect_ident("'marking'");
        if (kw.text != "marking") lx.fail(kw, "expected 'marking'");
        auto at = lx.peek();
        auto m = detail::parse_marking_line(lx);
        for (const auto& other : out)
            if (other.place == m.place) lx.fail(at, "duplicate marking for '" + m.place + "'");
        out.push_back(std::move(m));
    }
    return out;
}

inline std::string render_tokens(const std::map<std::string, std::uint32_t>& tokens) {
    std::string s = "{";
    bool first = true;
    for (const auto& [name, n] : tokens) {
        if (!first) s += ",";
        first = false;
        s += name + ":" + std::to_string(n);
    }
    return s + "}";
}

/// Normal form: header, comments, places, transitions, arcs, markings.
inline std::string render(const NetDocument& doc) {
    std::ostringstream out;
    out << "net " << to_string(doc.kind) << " " << doc.name << "\n";
    for (const auto& c : doc.comments) out << "#" << (c.empty() ? "" : " ") << c << "\n";
    for (const auto& p : doc.places) out << "place " << p << "\n";
    for (const auto& t : doc.transitions) out << "trans " << t << "\n";
    for (const auto& a : doc.arcs) {
        switch (a.type) {
        case ArcType::flow:
            out << "arc " << (a.into_transition ? a.place : a.transition) << " -> "
                << (a.into_transition ? a.transition : a.place);
            for (const auto& v : a.vars) out << " " << v;
            break;
        case ArcType::inhibit: out << "inhibit " << a.place << " -> " << a.transition; break;
        case ArcType::reset: out << "reset " << a.place << " -> " << a.transition; break;
        }
        out << "\n";
    }
    for (const auto& m : doc.markings) out << "marking " << m.place << " = " << render_tokens(m.tokens) << "\n";
    return out.str();
}

/// Bidirectional map between textual names and NameIds. "." is "•"; ids
/// without a textual name render as `_<id>`.
class NameTable {
public:
    NameId intern(const std::string& s) {
        if (s == ".") return kDot;
        if (is_generated_name(s)) {
            NameId id{static_cast<std::uint32_t>(std::stoul(s.substr(1)))};
            reserve_through(id);
            return id;
        }
        if (auto id = find(s)) return *id;
        NameId id{next_++};
        entries_.emplace_back(s, id);
        return id;
    }

    /// Reserves ids up to `id` so that interned names never collide with it.
    void reserve_through(NameId id) { next_ = std::max(next_, id.id + 1); }

    void bind(const std::string& s, NameId id) {
        entries_.emplace_back(s, id);
        reserve_through(id);
    }

    [[nodiscard]] std::optional<NameId> find(const std::string& s) const {
        if (s == ".") return kDot;
        for (const auto& [name, id] : entries_)
            if (name == s) return id;
        if (is_generated_name(s)) return NameId{static_cast<std::uint32_t>(std::stoul(s.substr(1)))};
        return std::nullopt;
    }

    [[nodiscard]] std::string name(NameId id) const {
        if (id == kDot) return ".";
        for (const auto& [name, n] : entries_)
            if (n == id) return name;
        return "_" + std::to_string(id.id);
    }

private:
    std::vector<std::pair<std::string, NameId>> entries_;
    std::uint32_t next_ = 1;
};

/// A parsed document turned into engine structures. Ordinary nets are
/// embedded; inhibitor and reset nets are translated, and the source net is
/// kept alongside.
struct LoadedNet {
    NetKind kind = NetKind::nu;
    std::string name;
    NuNet net;
    Marking initial;
    NameTable names;
    std::optional<PtNet> pt;
    std::optional<ControlNet> source; // inhibitor or reset source
    std::optional<Translation> translation;
    std::vector<std::string> comments;

    /// Converts target markings declared against the source net into
    /// markings of `net`. Names shared with the initial marking keep their
    /// ids; new ones are interned in a scratch copy of the table.
    [[nodiscard]] Marking target(const std::vector<MarkingDecl>& decls) const {
        if (kind == NetKind::nu) {
            NameTable scratch = names;
            Marking m(net.num_places());
            for (const auto& d : decls) {
                auto p = net.find_place(d.place);
                if (!p) throw Error("target marks undeclared place '" + d.place + "'");
                for (const auto& [s, n] : d.tokens) m[*p].add(scratch.intern(s), n);
            }
            return m;
        }
        const auto& places = pt ? pt->places : source->places;
        PlaceCounts counts(places.size(), 0);
        for (const auto& d : decls) {
            auto it = std::find(places.begin(), places.end(), d.place);
            if (it == places.end()) throw Error("target marks undeclared place '" + d.place + "'");
            for (const auto& [s, n] : d.tokens) {
                if (s != ".") throw Error(std::string(to_string(kind)) + " targets only carry '.' tokens");
                counts[it - places.begin()] += n;
            }
        }
        if (pt) return embed_pt_marking(net, counts);
        return translation->marking(counts);
    }
};

namespace detail {

inline ControlNet control_net(const NetDocument& doc, PlaceCounts& m0) {
    ControlNet cn;
    cn.places = doc.places;
    cn.transitions = doc.transitions;
    auto idx = [](const std::vector<std::string>& v, const std::string& s) {
        return static_cast<std::uint32_t>(std::find(v.begin(), v.end(), s) - v.begin());
    };
    auto push_unique = [](std::vector<FlowArc>& v, FlowArc a) {
        if (std::find(v.begin(), v.end(), a) == v.end()) v.push_back(a);
    };
    for (const auto& a : doc.arcs) {
        FlowArc fa{idx(cn.places, a.place), idx(cn.transitions, a.transition)};
        if (a.type != ArcType::flow)
            push_unique(cn.control, fa);
        else
            push_unique(a.into_transition ? cn.inputs : cn.outputs, fa);
    }
    m0.assign(cn.places.size(), 0);
    for (const auto& m : doc.markings) m0[idx(cn.places, m.place)] = m.tokens.count(".") ? m.tokens.at(".") : 0;
    return cn;
}

} // namespace detail

inline LoadedNet load(const NetDocument& doc) {
    LoadedNet out;
    out.kind = doc.kind;
    out.name = doc.name;
    out.comments = doc.comments;
    switch (doc.kind) {
    case NetKind::nu: {
        for (const auto& p : doc.places) out.net.add_place(p);
        for (const auto& t : doc.transitions) out.net.add_transition(t);
        for (const auto& a : doc.arcs) {
            ArcLabel label;
            for (const auto& v : a.vars)
                label.add(out.net.variable(v, is_fresh_variable(v) ? VarKind::fresh : VarKind::plain));
            auto p = *out.net.find_place(a.place);
            auto t = *out.net.find_transition(a.transition);
            if (a.into_transition)
                out.net.add_input(p, t, label);
            else
                out.net.add_output(t, p, label);
        }
        out.initial = Marking(out.net.num_places());
        for (const auto& m : doc.markings) {
            auto p = *out.net.find_place(m.place);
            for (const auto& [s, n] : m.tokens) out.initial[p].add(out.names.intern(s), n);
        }
        break;
    }
    case NetKind::pt: {
        PtNet pt;
        pt.places = doc.places;
        pt.transitions = doc.transitions;
        auto idx = [](const std::vector<std::string>& v, const std::string& s) {
            return static_cast<std::uint32_t>(std::find(v.begin(), v.end(), s) - v.begin());
        };
        for (const auto& a : doc.arcs) {
            PtNet::Arc arc{idx(pt.places, a.place), idx(pt.transitions, a.transition),
                           a.vars.empty() ? 1u : static_cast<std::uint32_t>(a.vars.size())};
            (a.into_transition ? pt.inputs : pt.outputs).push_back(arc);
        }
        PtMarking m0(pt.places.size(), 0);
        for (const auto& m : doc.markings) m0[idx(pt.places, m.place)] = m.tokens.count(".") ? m.tokens.at(".") : 0;
        auto [net, initial] = embed_pt(pt, m0);
        out.net = std::move(net);
        out.initial = std::move(initial);
        out.pt = std::move(pt);
        break;
    }
    case NetKind::inhibitor:
    case NetKind::reset: {
        PlaceCounts m0;
        auto cn = detail::control_net(doc, m0);
        if (doc.kind == NetKind::reset) {
            out.translation = reset_to_nu(ResetNet{cn}, m0);
        } else {
            out.translation = inhibitor_to_nu(InhibitorNet{cn}, m0);
        }
        out.net = out.translation->net;
        out.initial = out.translation->initial;
        for (std::size_t p = 0; p < cn.places.size(); ++p)
            out.names.bind("a_" + cn.places[p], out.translation->names[p]);
        out.source = std::move(cn);
        break;
    }
    }
    return out;
}

/// Renders a marking in `{name:count,...}` form.
inline std::string render_marking_tokens(const NameMultiset& ms, const NameTable& names) {
    std::map<std::string, std::uint32_t> tokens;
    for (const auto& [a, n] : ms) tokens[names.name(a)] += n;
    return render_tokens(tokens);
}

/// A ν-PN document for `net` with initial marking `m`.
inline NetDocument document_of(const NuNet& net, const Marking& m, const NameTable& names, std::string name,
                               std::vector<std::string> comments = {}) {
    NetDocument doc;
    doc.kind = NetKind::nu;
    doc.name = std::move(name);
    doc.comments = std::move(comments);
    doc.places = net.places();
    for (const auto& t : net.transitions()) doc.transitions.push_back(t.name);
    auto vars_of = [&](const ArcLabel& label) {
        std::vector<std::string> vs;
        for (const auto& [v, n] : label)
            for (std::uint32_t k = 0; k < n; ++k) vs.push_back(net.var(v).name);
        return vs;
    };
    for (const auto& t : net.transitions()) {
        for (const auto& a : t.inputs)
            doc.arcs.push_back(ArcDecl{ArcType::flow, true, net.place_name(a.place), t.name, vars_of(a.label)});
        for (const auto& a : t.outputs)
            doc.arcs.push_back(ArcDecl{ArcType::flow, false, net.place_name(a.place), t.name, vars_of(a.label)});
    }
    for (PlaceId p = 0; p < m.num_places(); ++p) {
        if (m[p].empty()) continue;
        MarkingDecl d;
        d.place = net.place_name(p);
        for (const auto& [a, n] : m[p]) d.tokens[names.name(a)] += n;
        doc.markings.push_back(std::move(d));
    }
    return doc;
}

inline std::string render_mode(const NuNet& net, const Mode& sigma, const NameTable& names) {
    std::string s = "{";
    bool first = true;
    for (const auto& [v, a] : sigma) {
        if (!first) s += ",";
        first = false;
        s += net.var(v).name + "=" + names.name(a);
    }
    return s + "}";
}

inline std::string render_firing(const NuNet& net, const Firing& f, const NameTable& names) {
    return "fire " + net.transition(f.transition).name + " " + render_mode(net, f.mode, names);
}

inline void render_witness(std::ostream& out, const NuNet& net, const FiringSequence& seq, const NameTable& names) {
    out << "witness:\n";
    for (const auto& f : seq) out << render_firing(net, f, names) << "\n";
}

inline std::string render_result(const CoverResult& r, const NuNet& net, const NameTable& names) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << "\n";
    out << "stats: basis=" << r.basis_size << " iterations=" << r.iterations << "\n";
    if (r.witness) render_witness(out, net, *r.witness, names);
    return out.str();
}

inline std::string render_result(const AnalysisResult& r, const NuNet& net, const NameTable& names) {
    std::ostringstream out;
    out << "verdict: " << to_string(r.verdict) << "\n";
    out << "stats: nodes=" << r.stats.nodes << " expanded=" << r.stats.nodes_expanded
        << " width=" << r.stats.max_width << " depth=" << r.stats.max_depth << "\n";
    if (!r.witness.empty() || r.verdict == Verdict::reachable || r.pump_start)
        render_witness(out, net, r.witness, names);
    if (r.pump_start) out << "pump: " << *r.pump_start << "\n";
    if (r.pump_from) out << "pump-from: " << to_string(*r.pump_from, net.places()) << "\n";
    if (r.pump_to) out << "pump-to: " << to_string(*r.pump_to, net.places()) << "\n";
    return out.str();
}

/// Extracts the `fire` lines of a report. Names are resolved through the
/// table; unknown names are interned.
inline FiringSequence parse_witness(const std::string& text, const NuNet& net, NameTable& names) {
    FiringSequence seq;
    const auto lines = detail::split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const auto& line = lines[i];
        auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line.compare(first, 5, "fire ") != 0) continue;
        detail::LineLexer lx(line, i + 1);
        lx.next(); // fire
        auto t = lx.expect_ident("a transition");
        auto tid = net.find_transition(t.text);
        if (!tid) lx.fail(t, "unknown transition '" + t.text + "'");
        Firing f{*tid, {}};
        lx.expect_symbol("{");
        if (!lx.accept_symbol("}")) {
            do {
                auto v = lx.expect_ident("a variable");
                auto vid = net.find_variable(v.text);
                if (!vid) lx.fail(v, "unknown variable '" + v.text + "'");
                lx.expect_symbol("=");
                std::string name = lx.accept_symbol(".") ? std::string(".") : lx.expect_ident("a name").text;
                f.mode.bind(*vid, names.intern(name));
            } while (lx.accept_symbol(","));
            lx.expect_symbol("}");
        }
        lx.expect_end();
        seq.push_back(std::move(f));
    }
    return seq;
}

} // namespace nupn
