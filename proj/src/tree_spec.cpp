#include "sawtree/tree_spec.hpp"

#include <fstream>
#include <sstream>
#include <unordered_map>

#include "sawtree/errors.hpp"
#include "sawtree/finite_tree.hpp"
#include "sawtree/gallery.hpp"
#include "sawtree/saw_tree.hpp"

namespace sawtree {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

// "x=7/5,k=2" -> {{"x","7/5"},{"k","2"}}
std::unordered_map<std::string, std::string> parse_kv(const std::string& text,
                                                      const std::string& what) {
    std::unordered_map<std::string, std::string> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0)
            throw InvalidInput(what + ": expected key=value, got '" + item + "'");
        if (!out.emplace(trim(item.substr(0, eq)), trim(item.substr(eq + 1))).second)
            throw InvalidInput(what + ": duplicate key in '" + text + "'");
    }
    return out;
}

std::string need(const std::unordered_map<std::string, std::string>& kv, const std::string& key,
                 const std::string& what) {
    auto it = kv.find(key);
    if (it == kv.end()) throw InvalidInput(what + ": missing " + key + "=");
    return it->second;
}

std::int64_t parse_int(const std::string& s, const std::string& what) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(s, &pos);
        if (pos != s.size()) throw InvalidInput(what + ": bad integer '" + s + "'");
        return v;
    } catch (const InvalidInput&) {
        throw;
    } catch (const std::exception&) {
        throw InvalidInput(what + ": bad integer '" + s + "'");
    }
}

// Splits "join:{A};{B}" payload into A and B, honoring nested braces.
std::pair<std::string, std::string> split_join(const std::string& rest) {
    const std::string what = "join spec";
    std::size_t i = 0;
    auto read_braced = [&]() {
        if (i >= rest.size() || rest[i] != '{') throw InvalidInput(what + ": expected '{'");
        int depth = 0;
        const std::size_t start = ++i;
        for (; i < rest.size(); ++i) {
            if (rest[i] == '{') ++depth;
            if (rest[i] == '}') {
                if (depth == 0) return rest.substr(start, i++ - start);
                --depth;
            }
        }
        throw InvalidInput(what + ": unbalanced braces");
    };
    const std::string a = read_braced();
    if (i >= rest.size() || rest[i] != ';') throw InvalidInput(what + ": expected ';'");
    ++i;
    const std::string b = read_braced();
    if (i != rest.size()) throw InvalidInput(what + ": trailing text after '}'");
    return {a, b};
}

}  // namespace

std::shared_ptr<TreeModel> make_tree(const std::string& raw) {
    const std::string spec = trim(raw);
    if (spec.empty()) throw InvalidInput("empty tree spec");
    if (spec == "ray") return make_uniform_tree(1);
    if (spec == "binary") return make_uniform_tree(2);

    const auto colon = spec.find(':');
    const std::string head = colon == std::string::npos ? spec : spec.substr(0, colon);
    const std::string rest = colon == std::string::npos ? "" : spec.substr(colon + 1);

    if (head == "join") {
        auto [a, b] = split_join(rest);
        return std::make_shared<JoinTree>(make_tree(a), make_tree(b));
    }
    if (head == "saw") {
        std::string domain = rest;
        bool pruned = false;
        const std::string suffix = ":pruned";
        if (domain.size() >= suffix.size() &&
            domain.compare(domain.size() - suffix.size(), suffix.size(), suffix) == 0) {
            pruned = true;
            domain.resize(domain.size() - suffix.size());
        }
        return std::make_shared<SawTree>(DomainSpec::parse(domain), pruned);
    }
    if (head == "uniform") {
        return make_uniform_tree(parse_int(rest, "uniform spec"));
    }
    if (head == "prop5") {
        return make_greedy_floor_tree(parse_rational(need(parse_kv(rest, "prop5 spec"), "x",
                                                          "prop5 spec")));
    }
    if (head == "prop5bar") {
        return make_doubled_squares_tree(parse_rational(need(parse_kv(rest, "prop5bar spec"),
                                                             "x", "prop5bar spec")));
    }
    if (head == "prop4") {
        auto kv = parse_kv(rest, "prop4 spec");
        const auto k = parse_int(need(kv, "k", "prop4 spec"), "prop4 spec");
        if (k < 0) throw InvalidInput("prop4 spec: k must be >= 0");
        return make_poly_corrected_tree(parse_rational(need(kv, "x", "prop4 spec")),
                                        static_cast<std::uint32_t>(k));
    }
    if (head == "periodic") {
        std::string parens = rest;
        if (parens.empty()) throw InvalidInput("periodic spec: missing tree");
        if (parens[0] != '(') {
            std::ifstream in(parens, std::ios::binary);
            if (!in) throw InvalidInput("periodic spec: cannot read file '" + parens + "'");
            std::ostringstream buf;
            buf << in.rdbuf();
            parens = trim(buf.str());
        }
        return std::make_shared<PeriodicTree>(FiniteTree::parse(parens));
    }
    throw InvalidInput("unknown tree spec '" + spec + "'");
}

}  // namespace sawtree
