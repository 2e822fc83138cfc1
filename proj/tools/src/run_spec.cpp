#include "slspec/cli/run_spec.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>
#include <sstream>

namespace slspec::cli {

const char* to_string(CommandKind k) {
    switch (k) {
        case CommandKind::classify: return "classify";
        case CommandKind::bvals: return "bvals";
        case CommandKind::spectrum: return "spectrum";
        default: return "mscan";
    }
}

std::string format_number(double v) {
    if (v == 0.0) v = 0.0;  // drop the sign of negative zero
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

namespace {

struct Value {
    enum class Kind { number, string, boolean, array } kind = Kind::number;
    double num = 0.0;
    std::string str;
    bool flag = false;
    std::vector<Value> items;
    int line = 0;
};

struct Entry {
    Value value;
    int line = 0;
};

using Document = std::map<std::string, std::map<std::string, Entry>>;

[[noreturn]] void syntax(int line, const std::string& msg) {
    throw SpecError("line " + std::to_string(line) + ": " + msg, line, "");
}

[[noreturn]] void semantic(const std::string& path, const std::string& msg, int line = 0) {
    throw SpecError(path + ": " + msg, line, path);
}

class ValueParser {
public:
    ValueParser(const std::string& s, int line) : s_(s), line_(line) {}

    Value parse_all() {
        Value v = parse();
        skip_ws();
        if (pos_ != s_.size()) syntax(line_, "unexpected characters after value");
        return v;
    }

private:
    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
    }

    Value parse() {
        skip_ws();
        if (pos_ >= s_.size()) syntax(line_, "missing value");
        Value v;
        v.line = line_;
        const char c = s_[pos_];
        if (c == '"') {
            v.kind = Value::Kind::string;
            ++pos_;
            for (;;) {
                if (pos_ >= s_.size()) syntax(line_, "unterminated string");
                const char ch = s_[pos_++];
                if (ch == '"') break;
                if (ch == '\\') {
                    if (pos_ >= s_.size()) syntax(line_, "unterminated escape");
                    const char e = s_[pos_++];
                    if (e != '"' && e != '\\') syntax(line_, "unsupported escape sequence");
                    v.str.push_back(e);
                } else {
                    v.str.push_back(ch);
                }
            }
            return v;
        }
        if (c == '[') {
            v.kind = Value::Kind::array;
            ++pos_;
            skip_ws();
            if (pos_ < s_.size() && s_[pos_] == ']') {
                ++pos_;
                return v;
            }
            for (;;) {
                v.items.push_back(parse());
                skip_ws();
                if (pos_ >= s_.size()) syntax(line_, "unterminated array");
                if (s_[pos_] == ',') {
                    ++pos_;
                    continue;
                }
                if (s_[pos_] == ']') {
                    ++pos_;
                    return v;
                }
                syntax(line_, "expected ',' or ']' in array");
            }
        }
        if (s_.compare(pos_, 4, "true") == 0 || s_.compare(pos_, 5, "false") == 0) {
            v.kind = Value::Kind::boolean;
            v.flag = s_[pos_] == 't';
            pos_ += v.flag ? 4 : 5;
            return v;
        }
        const char* begin = s_.c_str() + pos_;
        char* end = nullptr;
        v.num = std::strtod(begin, &end);
        if (end == begin) syntax(line_, "invalid value");
        pos_ += static_cast<std::size_t>(end - begin);
        if (!std::isfinite(v.num)) syntax(line_, "non-finite number");
        return v;
    }

    const std::string& s_;
    int line_;
    std::size_t pos_ = 0;
};

bool is_ident(const std::string& s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_')) return false;
    return std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_';
}

std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

/// Removes a trailing comment, respecting string literals.
std::string strip_comment(const std::string& line) {
    bool in_str = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (in_str && c == '\\') {
            ++i;
            continue;
        }
        if (c == '"') in_str = !in_str;
        if (c == '#' && !in_str) return line.substr(0, i);
    }
    return line;
}

Document parse_document(const std::string& text) {
    Document doc;
    std::istringstream in(text);
    std::string raw, section;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::string l = trim(strip_comment(raw));
        if (l.empty()) continue;
        if (l.front() == '[') {
            if (l.back() != ']') syntax(line, "malformed section header");
            section = trim(l.substr(1, l.size() - 2));
            if (!is_ident(section)) syntax(line, "invalid section name");
            if (doc.count(section)) syntax(line, "duplicate section [" + section + "]");
            doc[section];
            continue;
        }
        const std::size_t eq = l.find('=');
        if (eq == std::string::npos) syntax(line, "expected 'key = value'");
        const std::string key = trim(l.substr(0, eq));
        if (!is_ident(key)) syntax(line, "invalid key");
        if (section.empty()) syntax(line, "key outside of any section");
        auto& sec = doc[section];
        if (sec.count(key)) syntax(line, "duplicate key '" + key + "'");
        sec[key] = Entry{ValueParser(l.substr(eq + 1), line).parse_all(), line};
    }
    return doc;
}

void apply_override(Document& doc, const std::string& ov) {
    const std::size_t eq = ov.find('=');
    const std::string path = trim(ov.substr(0, eq));
    const std::size_t dot = path.find('.');
    if (eq == std::string::npos || dot == std::string::npos)
        throw SpecError("override '" + ov + "': expected section.key=value", 0, path);
    const std::string section = path.substr(0, dot), key = path.substr(dot + 1);
    if (!is_ident(section) || !is_ident(key)) throw SpecError("override '" + ov + "': invalid key path", 0, path);
    const std::string text = trim(ov.substr(eq + 1));
    Value v;
    if (is_ident(text) && text != "true" && text != "false") {
        // bare words are strings on the command line
        v.kind = Value::Kind::string;
        v.str = text;
        doc[section][key] = Entry{v, 0};
        return;
    }
    try {
        v = ValueParser(text, 0).parse_all();
    } catch (const SpecError& e) {
        throw SpecError("override '" + ov + "': " + std::string(e.what()).substr(8), 0, path);
    }
    doc[section][key] = Entry{v, 0};
}

double as_number(const Entry& e, const std::string& path) {
    if (e.value.kind != Value::Kind::number) semantic(path, "expected a number", e.line);
    return e.value.num;
}

std::string as_string(const Entry& e, const std::string& path) {
    if (e.value.kind != Value::Kind::string) semantic(path, "expected a string", e.line);
    return e.value.str;
}

cplx as_complex(const Value& v, const std::string& path, int line) {
    if (v.kind == Value::Kind::number) return v.num;
    if (v.kind == Value::Kind::array && v.items.size() == 2 && v.items[0].kind == Value::Kind::number &&
        v.items[1].kind == Value::Kind::number)
        return {v.items[0].num, v.items[1].num};
    semantic(path, "expected a number or a [re, im] pair", line);
}

RunSpec build(const Document& doc) {
    static const std::set<std::string> sections{"problem", "command", "output", "tolerances"};
    for (const auto& [name, keys] : doc)
        if (!sections.count(name)) semantic(name, "unknown section");

    RunSpec spec;
    auto find = [&](const std::string& sec, const std::string& key) -> const Entry* {
        auto s = doc.find(sec);
        if (s == doc.end()) return nullptr;
        auto k = s->second.find(key);
        return k == s->second.end() ? nullptr : &k->second;
    };
    auto keys_of = [&](const std::string& sec) {
        auto s = doc.find(sec);
        return s == doc.end() ? std::map<std::string, Entry>{} : s->second;
    };

    // [problem]
    const Entry* name = find("problem", "name");
    if (!name) semantic("problem.name", "missing required key");
    spec.problem.name = as_string(*name, "problem.name");
    std::set<std::string> allowed;
    if (spec.problem.name == "bessel") allowed = {"gamma"};
    else if (spec.problem.name == "laguerre") allowed = {"beta"};
    else if (spec.problem.name != "legendre" && spec.problem.name != "regular_free")
        semantic("problem.name", "unknown problem '" + spec.problem.name + "'", name->line);
    for (const auto& [k, e] : keys_of("problem")) {
        if (k == "name") continue;
        if (!allowed.count(k)) semantic("problem." + k, "unknown key", e.line);
        spec.problem.params[k] = as_number(e, "problem." + k);
    }
    for (const std::string& k : allowed)
        if (!spec.problem.params.count(k)) semantic("problem." + k, "missing required key");
    if (spec.problem.name == "bessel" && !(spec.problem.params["gamma"] >= 0.0))
        semantic("problem.gamma", "must be >= 0", find("problem", "gamma")->line);
    if (spec.problem.name == "laguerre") {
        const double b = spec.problem.params["beta"];
        if (!(b > 0.0 && b < 2.0)) semantic("problem.beta", "must lie in (0, 2)", find("problem", "beta")->line);
    }

    // [command]
    static const std::set<std::string> command_keys{"kind", "bc", "alpha", "beta", "window", "z", "endpoint", "route"};
    for (const auto& [k, e] : keys_of("command"))
        if (!command_keys.count(k)) semantic("command." + k, "unknown key", e.line);
    const Entry* kind = find("command", "kind");
    if (!kind) semantic("command.kind", "missing required key");
    const std::string ks = as_string(*kind, "command.kind");
    if (ks == "classify") spec.command = CommandKind::classify;
    else if (ks == "bvals") spec.command = CommandKind::bvals;
    else if (ks == "spectrum") spec.command = CommandKind::spectrum;
    else if (ks == "mscan") spec.command = CommandKind::mscan;
    else semantic("command.kind", "expected classify, bvals, spectrum or mscan", kind->line);

    if (const Entry* e = find("command", "bc")) {
        spec.bc = as_string(*e, "command.bc");
        if (spec.bc != "friedrichs" && spec.bc != "separated")
            semantic("command.bc", "expected friedrichs or separated", e->line);
    }
    const double pi = 3.141592653589793;
    for (const char* key : {"alpha", "beta"}) {
        const std::string path = std::string("command.") + key;
        if (const Entry* e = find("command", key)) {
            const double v = as_number(*e, path);
            if (!(v >= 0.0 && v < pi)) semantic(path, "angle must lie in [0, pi)", e->line);
            (key[0] == 'a' ? spec.alpha : spec.beta) = v;
        }
    }
    if (const Entry* e = find("command", "window")) {
        const Value& v = e->value;
        if (v.kind != Value::Kind::array || v.items.size() != 2 || v.items[0].kind != Value::Kind::number ||
            v.items[1].kind != Value::Kind::number)
            semantic("command.window", "expected [lo, hi]", e->line);
        if (!(v.items[0].num < v.items[1].num)) semantic("command.window", "lo must be below hi", e->line);
        spec.window = std::array<double, 2>{v.items[0].num, v.items[1].num};
    }
    if (const Entry* e = find("command", "z")) {
        const Value& v = e->value;
        if (v.kind == Value::Kind::array && !(v.items.size() == 2 && v.items[0].kind == Value::Kind::number &&
                                              v.items[1].kind == Value::Kind::number)) {
            for (const Value& it : v.items) spec.z.push_back(as_complex(it, "command.z", e->line));
        } else {
            spec.z.push_back(as_complex(v, "command.z", e->line));
        }
    }
    if (const Entry* e = find("command", "endpoint")) {
        const std::string s = as_string(*e, "command.endpoint");
        if (s == "left") spec.endpoint = Side::left;
        else if (s == "right") spec.endpoint = Side::right;
        else semantic("command.endpoint", "expected left or right", e->line);
    }
    if (const Entry* e = find("command", "route")) {
        spec.route = as_string(*e, "command.route");
        if (spec.route != "wronskian" && spec.route != "quotient")
            semantic("command.route", "expected wronskian or quotient", e->line);
    }
    switch (spec.command) {
        case CommandKind::spectrum:
            if (!spec.window) semantic("command.window", "missing required key for spectrum");
            if (spec.bc == "separated" && !spec.alpha) semantic("command.alpha", "separated condition needs alpha");
            break;
        case CommandKind::mscan:
            if (spec.z.empty()) semantic("command.z", "missing required key for mscan");
            break;
        case CommandKind::classify:
            if (!spec.endpoint) semantic("command.endpoint", "missing required key for classify");
            if (spec.z.size() > 1) semantic("command.z", "classify takes a single z");
            break;
        case CommandKind::bvals:
            if (!spec.endpoint) semantic("command.endpoint", "missing required key for bvals");
            break;
    }

    // [output]
    for (const auto& [k, e] : keys_of("output")) {
        if (k != "path") semantic("output." + k, "unknown key", e.line);
        spec.output = as_string(e, "output.path");
    }

    // [tolerances]
    for (const auto& [k, e] : keys_of("tolerances")) {
        const std::string path = "tolerances." + k;
        const double v = as_number(e, path);
        if (!(v > 0.0)) semantic(path, "must be positive", e.line);
        if (k == "rel_tol") spec.tolerances.rel_tol = v;
        else if (k == "abs_tol") spec.tolerances.abs_tol = v;
        else if (k == "root_tol") spec.tolerances.root_tol = v;
        else if (k == "weyl_tol") spec.tolerances.weyl_tol = v;
        else if (k == "panels") {
            if (v != std::floor(v) || v > 1e6) semantic(path, "must be a positive integer", e.line);
            spec.tolerances.panels = static_cast<int>(v);
        } else {
            semantic(path, "unknown key", e.line);
        }
    }
    return spec;
}

std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') out.push_back('\\');
        out.push_back(c);
    }
    return out + "\"";
}

}  // namespace

RunSpec parse_spec(const std::string& text) { return parse_spec(text, {}); }

RunSpec parse_spec(const std::string& text, const std::vector<std::string>& overrides) {
    Document doc = parse_document(text);
    for (const std::string& ov : overrides) apply_override(doc, ov);
    return build(doc);
}

std::string render_spec(const RunSpec& spec) {
    std::ostringstream o;
    o << "[problem]\n";
    o << "name = " << quote(spec.problem.name) << "\n";
    for (const auto& [k, v] : spec.problem.params) o << k << " = " << format_number(v) << "\n";
    o << "\n[command]\n";
    o << "kind = " << quote(to_string(spec.command)) << "\n";
    o << "bc = " << quote(spec.bc) << "\n";
    if (spec.alpha) o << "alpha = " << format_number(*spec.alpha) << "\n";
    if (spec.beta) o << "beta = " << format_number(*spec.beta) << "\n";
    if (spec.window) o << "window = [" << format_number((*spec.window)[0]) << ", " << format_number((*spec.window)[1]) << "]\n";
    if (!spec.z.empty()) {
        o << "z = [";
        for (std::size_t i = 0; i < spec.z.size(); ++i)
            o << (i ? ", " : "") << "[" << format_number(spec.z[i].real()) << ", " << format_number(spec.z[i].imag())
              << "]";
        o << "]\n";
    }
    if (spec.endpoint) o << "endpoint = " << quote(slspec::to_string(*spec.endpoint)) << "\n";
    o << "route = " << quote(spec.route) << "\n";
    if (!spec.output.empty()) o << "\n[output]\npath = " << quote(spec.output) << "\n";
    o << "\n[tolerances]\n";
    o << "rel_tol = " << format_number(spec.tolerances.rel_tol) << "\n";
    o << "abs_tol = " << format_number(spec.tolerances.abs_tol) << "\n";
    o << "root_tol = " << format_number(spec.tolerances.root_tol) << "\n";
    o << "weyl_tol = " << format_number(spec.tolerances.weyl_tol) << "\n";
    o << "panels = " << spec.tolerances.panels << "\n";
    return o.str();
}

}  // namespace slspec::cli
