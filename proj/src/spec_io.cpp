#include "defq/spec_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace defq {

using ojson = nlohmann::ordered_json;

bool ProblemSpec::operator==(const ProblemSpec& o) const {
    const bool maps_equal =
        user_contraction.has_value() == o.user_contraction.has_value() &&
        (!user_contraction ||
         (user_contraction->nabla == o.user_contraction->nabla &&
          user_contraction->pi == o.user_contraction->pi &&
          user_contraction->h == o.user_contraction->h));
    return name == o.name && description == o.description && max_degree == o.max_degree &&
           algebra.complex.space == o.algebra.complex.space &&
           algebra.complex.d == o.algebra.complex.d && algebra.bracket == o.algebra.bracket &&
           maps_equal;
}

namespace {

[[noreturn]] void bad(const std::string& what) {
    throw ParseError(what);
}

int parse_degree_key(const std::string& key) {
    try {
        std::size_t used = 0;
        const int deg = std::stoi(key, &used);
        if (used != key.size())
            bad("bad degree key '" + key + "'");
        return deg;
    } catch (const ParseError&) {
        throw;
    } catch (const std::exception&) {
        bad("bad degree key '" + key + "'");
    }
}

/// Entry lists of the shape [{"from": label, "to": [[label, "p/q"], ...]}].
GradedMap parse_entry_map(const ojson& arr, const GradedSpace& src, const GradedSpace& tgt,
                          int degree, const std::string& what) {
    GradedMap m = GradedMap::zero(src, tgt, degree);
    const auto src_table = label_table(src);
    const auto tgt_table = label_table(tgt);
    std::map<int, Matrix> blocks;
    for (const auto& entry : arr) {
        if (!entry.is_object() || !entry.contains("from") || !entry.contains("to"))
            bad(what + ": each entry needs 'from' and 'to'");
        const std::string from = entry.at("from").get<std::string>();
        auto fit = src_table.find(from);
        if (fit == src_table.end())
            bad(what + ": unknown label '" + from + "'");
        const auto [fdeg, fidx] = fit->second;
        auto bit = blocks.find(fdeg);
        if (bit == blocks.end())
            bit = blocks.emplace(fdeg, Matrix::zero(tgt.dim(fdeg + degree), src.dim(fdeg)))
                      .first;
        for (const auto& pair : entry.at("to")) {
            if (!pair.is_array() || pair.size() != 2)
                bad(what + ": 'to' entries are [label, coeff] pairs");
            const std::string to = pair.at(0).get<std::string>();
            auto tit = tgt_table.find(to);
            if (tit == tgt_table.end())
                bad(what + ": unknown label '" + to + "'");
            const auto [tdeg, tidx] = tit->second;
            if (tdeg != fdeg + degree)
                bad(what + ": entry " + from + " -> " + to + " violates the degree");
            bit->second.at(tidx, fidx) += Rational::parse(pair.at(1).get<std::string>());
        }
    }
    for (auto& [deg, blk] : blocks)
        if (!blk.is_zero())
            m.blocks[deg] = std::move(blk);
    return m;
}

ojson entry_map_json(const GradedMap& m) {
    ojson arr = ojson::array();
    for (const auto& [j, blk] : m.blocks) {
        for (int c = 0; c < blk.cols; ++c) {
            ojson to = ojson::array();
            for (int r = 0; r < blk.rows; ++r)
                if (!blk.at(r, c).is_zero())
                    to.push_back({m.target.labels(j + m.degree)[r], blk.at(r, c).str()});
            if (!to.empty())
                arr.push_back({{"from", m.source.labels(j)[c]}, {"to", to}});
        }
    }
    return arr;
}

}  // namespace

ProblemSpec parse_spec(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const std::exception& e) {
        bad(std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object())
        bad("top level must be an object");
    ProblemSpec s;
    s.name = j.value("name", std::string("unnamed"));
    s.description = j.value("description", std::string());
    if (j.contains("field") && j.at("field").get<std::string>() != "Q")
        bad("ground field must be \"Q\"");
    s.max_degree = j.value("max_degree", 8);
    if (s.max_degree < 1)
        bad("max_degree must be at least 1");

    if (!j.contains("degrees") || !j.at("degrees").is_object())
        bad("missing 'degrees' object");
    for (const auto& [key, labels] : j.at("degrees").items()) {
        const int deg = parse_degree_key(key);
        std::vector<Label> ls;
        for (const auto& l : labels)
            ls.push_back(l.get<std::string>());
        if (!ls.empty())
            s.algebra.complex.space.basis[deg] = std::move(ls);
    }
    try {
        label_table(s.algebra.complex.space);
    } catch (const std::exception& e) {
        bad(e.what());
    }

    const GradedSpace& sp = s.algebra.complex.space;
    s.algebra.complex.d = GradedMap::zero(sp, sp, -1);
    if (j.contains("differential")) {
        ojson darr = ojson::array();
        for (const auto& e : j.at("differential")) {
            if (!e.contains("from") || !e.contains("to") || !e.contains("coeff"))
                bad("differential entries need 'from', 'to', 'coeff'");
            darr.push_back({{"from", e.at("from")},
                            {"to", ojson::array({ojson::array({e.at("to"), e.at("coeff")})})}});
        }
        s.algebra.complex.d = parse_entry_map(darr, sp, sp, -1, "differential");
    }

    if (j.contains("bracket")) {
        const auto table = label_table(sp);
        for (const auto& e : j.at("bracket")) {
            if (!e.contains("x") || !e.contains("y") || !e.contains("value"))
                bad("bracket entries need 'x', 'y', 'value'");
            const std::string x = e.at("x").get<std::string>();
            const std::string y = e.at("y").get<std::string>();
            if (!table.count(x) || !table.count(y))
                bad("bracket labels must resolve: [" + x + ", " + y + "]");
            if (x > y)
                bad("bracket pairs are listed once with x <= y: [" + x + ", " + y + "]");
            std::vector<std::pair<Label, Rational>> value;
            for (const auto& pair : e.at("value")) {
                if (!pair.is_array() || pair.size() != 2)
                    bad("bracket values are [label, coeff] pairs");
                const std::string l = pair.at(0).get<std::string>();
                if (!table.count(l))
                    bad("bracket value label '" + l + "' does not resolve");
                value.emplace_back(l, Rational::parse(pair.at(1).get<std::string>()));
            }
            s.algebra.set_bracket(x, y, std::move(value));
        }
    }

    if (j.contains("contraction")) {
        const auto& c = j.at("contraction");
        if (!c.contains("small") || !c.contains("nabla") || !c.contains("pi") ||
            !c.contains("h"))
            bad("contraction needs 'small', 'nabla', 'pi', 'h'");
        GradedSpace small;
        for (const auto& [key, labels] : c.at("small").items()) {
            const int deg = parse_degree_key(key);
            std::vector<Label> ls;
            for (const auto& l : labels)
                ls.push_back(l.get<std::string>());
            if (!ls.empty())
                small.basis[deg] = std::move(ls);
        }
        Contraction k;
        k.big = s.algebra.complex;
        k.small.space = small;
        k.small.d = GradedMap::zero(small, small, -1);
        k.nabla = parse_entry_map(c.at("nabla"), small, sp, 0, "nabla");
        k.pi = parse_entry_map(c.at("pi"), sp, small, 0, "pi");
        k.h = parse_entry_map(c.at("h"), sp, sp, +1, "h");
        s.user_contraction = std::move(k);
    }
    return s;
}

ProblemSpec load_spec_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_spec(ss.str());
}

std::string serialize_spec(const ProblemSpec& s) {
    ojson j;
    j["name"] = s.name;
    j["field"] = "Q";
    if (!s.description.empty())
        j["description"] = s.description;
    j["max_degree"] = s.max_degree;

    ojson degrees;
    const auto ds = s.algebra.complex.space.degrees();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it)
        degrees[std::to_string(*it)] = s.algebra.complex.space.labels(*it);
    j["degrees"] = degrees;

    ojson diff = ojson::array();
    for (auto it = ds.rbegin(); it != ds.rend(); ++it) {
        const Matrix blk = s.algebra.complex.d.block(*it);
        for (int c = 0; c < blk.cols; ++c)
            for (int r = 0; r < blk.rows; ++r)
                if (!blk.at(r, c).is_zero())
                    diff.push_back({{"from", s.algebra.complex.space.labels(*it)[c]},
                                    {"to", s.algebra.complex.space.labels(*it - 1)[r]},
                                    {"coeff", blk.at(r, c).str()}});
    }
    j["differential"] = diff;

    ojson br = ojson::array();
    for (const auto& [key, value] : s.algebra.bracket) {
        if (value.empty())
            continue;
        ojson v = ojson::array();
        for (const auto& [l, c] : value)
            if (!c.is_zero())
                v.push_back({l, c.str()});
        if (!v.empty())
            br.push_back({{"x", key.first}, {"y", key.second}, {"value", v}});
    }
    j["bracket"] = br;

    if (s.user_contraction) {
        const Contraction& k = *s.user_contraction;
        ojson c;
        ojson small;
        const auto sds = k.small.space.degrees();
        for (auto it = sds.rbegin(); it != sds.rend(); ++it)
            small[std::to_string(*it)] = k.small.space.labels(*it);
        c["small"] = small;
        c["nabla"] = entry_map_json(k.nabla);
        c["pi"] = entry_map_json(k.pi);
        c["h"] = entry_map_json(k.h);
        j["contraction"] = c;
    }
    return j.dump(2) + "\n";
}

}  // namespace defq
