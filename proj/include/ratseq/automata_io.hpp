#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ratseq/dfao.hpp"
#include "ratseq/factor_nfa.hpp"
#include "ratseq/morphic.hpp"

namespace ratseq {

// DFAO file format:
//   {"states":[...], "initial":..., "alphabet":[ints],
//    "delta":{"state,digit":"state"}, "output":{"state":"letter"}}
// The NFA format mirrors it with list-valued delta and a "finals" object
// mapping final states to their decorations.

namespace detail {

inline std::string json_context(const std::string& where, const std::string& field) {
    return where.empty() ? field : where + ": " + field;
}

template <typename T>
inline T json_field(const nlohmann::json& j, const std::string& field, const std::string& where) {
    if (!j.contains(field)) throw Error(json_context(where, "missing field '" + field + "'"));
    try {
        return j.at(field).get<T>();
    } catch (const nlohmann::json::exception&) {
        throw Error(json_context(where, "field '" + field + "' has the wrong type"));
    }
}

inline std::pair<std::string, int> split_state_digit(const std::string& key, const std::string& where) {
    auto comma = key.rfind(',');
    if (comma == std::string::npos || comma + 1 == key.size())
        throw Error(json_context(where, "bad delta key '" + key + "' (expected \"state,digit\")"));
    try {
        return {key.substr(0, comma), std::stoi(key.substr(comma + 1))};
    } catch (const std::exception&) {
        throw Error(json_context(where, "bad digit in delta key '" + key + "'"));
    }
}

inline int state_id(const std::map<std::string, int>& ids, const std::string& name,
                    const std::string& where) {
    auto it = ids.find(name);
    if (it == ids.end()) throw Error(json_context(where, "unknown state '" + name + "'"));
    return it->second;
}

}  // namespace detail

inline nlohmann::json dfao_to_json(const Dfao& d) {
    nlohmann::json j;
    j["states"] = d.names();
    j["initial"] = d.name(d.initial());
    j["alphabet"] = d.alphabet();
    nlohmann::json delta = nlohmann::json::object();
    for (int s = 0; s < d.state_count(); ++s)
        for (int a : d.alphabet())
            delta[d.name(s) + "," + std::to_string(a)] = d.name(d.step(s, a));
    j["delta"] = std::move(delta);
    nlohmann::json output = nlohmann::json::object();
    for (int s = 0; s < d.state_count(); ++s) output[d.name(s)] = d.out(s);
    j["output"] = std::move(output);
    return j;
}

inline Dfao dfao_from_json(const nlohmann::json& j, const std::string& where = "") {
    auto names = detail::json_field<std::vector<std::string>>(j, "states", where);
    auto initial_name = detail::json_field<std::string>(j, "initial", where);
    auto alphabet = detail::json_field<std::vector<int>>(j, "alphabet", where);
    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < names.size(); ++i) {
        if (!ids.emplace(names[i], static_cast<int>(i)).second)
            throw Error(detail::json_context(where, "duplicate state '" + names[i] + "'"));
    }
    std::sort(alphabet.begin(), alphabet.end());

    std::vector<std::vector<int>> delta(names.size(), std::vector<int>(alphabet.size(), -1));
    auto delta_json = detail::json_field<nlohmann::json>(j, "delta", where);
    for (auto it = delta_json.begin(); it != delta_json.end(); ++it) {
        auto [state_name, digit] = detail::split_state_digit(it.key(), where);
        int s = detail::state_id(ids, state_name, where);
        auto pos = std::find(alphabet.begin(), alphabet.end(), digit);
        if (pos == alphabet.end())
            throw Error(detail::json_context(where, "delta digit " + std::to_string(digit) +
                                                        " not in alphabet"));
        if (!it.value().is_string())
            throw Error(detail::json_context(where, "delta target for '" + it.key() + "' must be a state name"));
        delta[static_cast<std::size_t>(s)][static_cast<std::size_t>(pos - alphabet.begin())] =
            detail::state_id(ids, it.value().get<std::string>(), where);
    }
    for (std::size_t s = 0; s < names.size(); ++s)
        for (std::size_t a = 0; a < alphabet.size(); ++a)
            if (delta[s][a] < 0)
                throw Error(detail::json_context(
                    where, "delta is not total: missing '" + names[s] + "," +
                               std::to_string(alphabet[a]) + "'"));

    auto output_json = detail::json_field<nlohmann::json>(j, "output", where);
    std::vector<std::string> output(names.size());
    std::vector<bool> have(names.size(), false);
    for (auto it = output_json.begin(); it != output_json.end(); ++it) {
        int s = detail::state_id(ids, it.key(), where);
        if (!it.value().is_string())
            throw Error(detail::json_context(where, "output for '" + it.key() + "' must be a string"));
        output[static_cast<std::size_t>(s)] = it.value().get<std::string>();
        have[static_cast<std::size_t>(s)] = true;
    }
    for (std::size_t s = 0; s < names.size(); ++s)
        if (!have[s])
            throw Error(detail::json_context(where, "output missing for state '" + names[s] + "'"));

    return Dfao(std::move(names), detail::state_id(ids, initial_name, where), std::move(alphabet),
                std::move(delta), std::move(output));
}

inline Dfao load_dfao(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open automaton file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("file '" + path + "': invalid JSON (" + e.what() + ")");
    }
    return dfao_from_json(j, "file '" + path + "'");
}

inline void save_dfao(const Dfao& d, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write automaton file '" + path + "'");
    out << dfao_to_json(d).dump(2) << "\n";
}

inline std::string dfao_dot(const Dfao& d) {
    std::ostringstream out;
    out << "digraph dfao {\n  rankdir=LR;\n  start [shape=point];\n";
    for (int s = 0; s < d.state_count(); ++s)
        out << "  s" << s << " [label=\"" << d.name(s) << "|" << d.out(s) << "\"];\n";
    out << "  start -> s" << d.initial() << ";\n";
    for (int s = 0; s < d.state_count(); ++s) {
        // One edge per (source, target), labels collected.
        std::map<int, std::string> grouped;
        for (int a : d.alphabet()) {
            std::string& labels = grouped[d.step(s, a)];
            if (!labels.empty()) labels += ",";
            labels += std::to_string(a);
        }
        for (const auto& [target, labels] : grouped)
            out << "  s" << s << " -> s" << target << " [label=\"" << labels << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

inline nlohmann::json nfa_to_json(const FactorNfa& nfa) {
    nlohmann::json j;
    j["states"] = nfa.names;
    j["initial"] = nfa.names[static_cast<std::size_t>(nfa.initial)];
    j["alphabet"] = nfa.alphabet;
    nlohmann::json delta = nlohmann::json::object();
    for (int s = 0; s < nfa.state_count(); ++s)
        for (const auto& [label, targets] : nfa.delta[static_cast<std::size_t>(s)]) {
            std::vector<std::string> names;
            for (int t : targets) names.push_back(nfa.names[static_cast<std::size_t>(t)]);
            delta[nfa.names[static_cast<std::size_t>(s)] + "," + std::to_string(label)] = names;
        }
    j["delta"] = std::move(delta);
    nlohmann::json finals = nlohmann::json::object();
    for (int s = 0; s < nfa.state_count(); ++s)
        if (nfa.final_dec[static_cast<std::size_t>(s)])
            finals[nfa.names[static_cast<std::size_t>(s)]] = *nfa.final_dec[static_cast<std::size_t>(s)];
    j["finals"] = std::move(finals);
    return j;
}

inline FactorNfa nfa_from_json(const nlohmann::json& j, const std::string& where = "") {
    FactorNfa nfa;
    nfa.names = detail::json_field<std::vector<std::string>>(j, "states", where);
    std::map<std::string, int> ids;
    for (std::size_t i = 0; i < nfa.names.size(); ++i)
        if (!ids.emplace(nfa.names[i], static_cast<int>(i)).second)
            throw Error(detail::json_context(where, "duplicate state '" + nfa.names[i] + "'"));
    nfa.initial = detail::state_id(ids, detail::json_field<std::string>(j, "initial", where), where);
    nfa.alphabet = detail::json_field<std::vector<int>>(j, "alphabet", where);
    std::sort(nfa.alphabet.begin(), nfa.alphabet.end());
    nfa.delta.resize(nfa.names.size());
    nfa.final_dec.resize(nfa.names.size());
    auto delta_json = detail::json_field<nlohmann::json>(j, "delta", where);
    for (auto it = delta_json.begin(); it != delta_json.end(); ++it) {
        auto [state_name, digit] = detail::split_state_digit(it.key(), where);
        int s = detail::state_id(ids, state_name, where);
        if (!std::count(nfa.alphabet.begin(), nfa.alphabet.end(), digit))
            throw Error(detail::json_context(where, "delta digit " + std::to_string(digit) +
                                                        " not in alphabet"));
        if (!it.value().is_array())
            throw Error(detail::json_context(where, "delta for '" + it.key() + "' must be a list"));
        std::vector<int> targets;
        for (const auto& name : it.value()) {
            if (!name.is_string())
                throw Error(detail::json_context(where, "delta target in '" + it.key() + "' must be a state name"));
            targets.push_back(detail::state_id(ids, name.get<std::string>(), where));
        }
        std::sort(targets.begin(), targets.end());
        targets.erase(std::unique(targets.begin(), targets.end()), targets.end());
        nfa.delta[static_cast<std::size_t>(s)][digit] = std::move(targets);
    }
    auto finals_json = detail::json_field<nlohmann::json>(j, "finals", where);
    for (auto it = finals_json.begin(); it != finals_json.end(); ++it) {
        if (!it.value().is_string())
            throw Error(detail::json_context(where, "final decoration for '" + it.key() + "' must be a string"));
        nfa.final_dec[static_cast<std::size_t>(detail::state_id(ids, it.key(), where))] =
            it.value().get<std::string>();
    }
    return nfa;
}

inline FactorNfa load_nfa(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open automaton file '" + path + "'");
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error("file '" + path + "': invalid JSON (" + e.what() + ")");
    }
    return nfa_from_json(j, "file '" + path + "'");
}

inline std::string nfa_dot(const FactorNfa& nfa) {
    std::ostringstream out;
    out << "digraph nfa {\n  rankdir=TB;\n  start [shape=point];\n";
    for (int s = 0; s < nfa.state_count(); ++s) {
        out << "  s" << s << " [label=\"" << nfa.names[static_cast<std::size_t>(s)];
        if (nfa.final_dec[static_cast<std::size_t>(s)])
            out << "|" << *nfa.final_dec[static_cast<std::size_t>(s)];
        out << "\"";
        if (nfa.final_dec[static_cast<std::size_t>(s)]) out << ", shape=doublecircle";
        out << "];\n";
    }
    out << "  start -> s" << nfa.initial << ";\n";
    for (int s = 0; s < nfa.state_count(); ++s)
        for (const auto& [label, targets] : nfa.delta[static_cast<std::size_t>(s)])
            for (int t : targets)
                out << "  s" << s << " -> s" << t << " [label=\"" << label << "\"];\n";
    out << "}\n";
    return out.str();
}

// Morphism-system text: one line per rule "i: a -> word" (i = morphism
// index); block substitutions use "block -> word". Words use the digit word
// format; the seed is supplied separately.

inline std::string to_text(const AlternatingSystem& sys) {
    std::ostringstream out;
    for (std::size_t i = 0; i < sys.morphisms.size(); ++i)
        for (const auto& [letter, img] : sys.morphisms[i])
            out << i << ": " << letter << " -> " << to_text(DigitWord(img)) << "\n";
    return out.str();
}

inline std::string to_text(const BlockSubstitution& g) {
    std::ostringstream out;
    for (const auto& [block, img] : g.images)
        out << to_text(DigitWord(block)) << " -> " << to_text(DigitWord(img)) << "\n";
    return out.str();
}

namespace detail {

inline std::string strip(const std::string& s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? "" : s.substr(b, e - b + 1);
}

}  // namespace detail

inline AlternatingSystem alternating_from_text(const std::string& text, int seed) {
    AlternatingSystem sys;
    sys.seed = seed;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        auto colon = line.find(':');
        auto arrow = line.find("->");
        if (colon == std::string::npos || arrow == std::string::npos || arrow < colon)
            throw Error("morphism rules, line " + std::to_string(lineno) +
                        ": expected \"i: a -> word\"");
        int index, letter;
        try {
            index = std::stoi(detail::strip(line.substr(0, colon)));
            letter = std::stoi(detail::strip(line.substr(colon + 1, arrow - colon - 1)));
        } catch (const std::exception&) {
            throw Error("morphism rules, line " + std::to_string(lineno) + ": bad index or letter");
        }
        DigitWord img = word_from_text(detail::strip(line.substr(arrow + 2)));
        if (index < 0) throw Error("morphism rules, line " + std::to_string(lineno) + ": negative index");
        if (static_cast<std::size_t>(index) >= sys.morphisms.size())
            sys.morphisms.resize(static_cast<std::size_t>(index) + 1);
        sys.morphisms[static_cast<std::size_t>(index)][letter] = img.digits();
    }
    if (sys.morphisms.empty()) throw Error("morphism rules: no rules found");
    return sys;
}

inline BlockSubstitution block_from_text(const std::string& text) {
    BlockSubstitution g;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    int block_len = -1;
    while (std::getline(in, line)) {
        ++lineno;
        line = detail::strip(line);
        if (line.empty() || line[0] == '#') continue;
        auto arrow = line.find("->");
        if (arrow == std::string::npos)
            throw Error("block rules, line " + std::to_string(lineno) + ": expected \"block -> word\"");
        DigitWord block = word_from_text(detail::strip(line.substr(0, arrow)));
        DigitWord img = word_from_text(detail::strip(line.substr(arrow + 2)));
        if (block_len < 0) block_len = static_cast<int>(block.size());
        if (static_cast<int>(block.size()) != block_len)
            throw Error("block rules, line " + std::to_string(lineno) + ": inconsistent block length");
        g.images[block.digits()] = img.digits();
    }
    if (block_len <= 0) throw Error("block rules: no rules found");
    g.block_len = block_len;
    return g;
}

}  // namespace ratseq
