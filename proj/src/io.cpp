#include "detmax/io.hpp"

#include <fstream>

namespace detmax {

Json to_json(const Rat& r) { return r.str(); }

Json to_json(const RatVectorSet& v) {
    Json rows = Json::array();
    for (const auto& vec : v.vectors) {
        Json row = Json::array();
        for (const auto& e : vec) row.push_back(to_json(e));
        rows.push_back(std::move(row));
    }
    return Json{{"type", "vectors"}, {"d", v.d}, {"vectors", std::move(rows)}};
}

Json to_json(const GramMatrix& g) {
    Json rows = Json::array();
    for (int i = 0; i < g.order(); ++i) {
        Json row = Json::array();
        for (int j = 0; j < g.order(); ++j) row.push_back(to_json(g.m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return Json{{"type", "gram"},
                {"n", g.order()},
                {"entries", std::move(rows)},
                {"psd", g.psd == PsdProvenance::ConstructedFromVectors ? "constructed" : "asserted"}};
}

Json to_json(const GridTilingInstance& inst) {
    Json rows = Json::array();
    for (const auto& row : inst.cells) {
        Json jrow = Json::array();
        for (const auto& cell : row) {
            Json jcell = Json::array();
            for (const auto& [x, y] : cell) jcell.push_back(Json::array({x, y}));
            jrow.push_back(std::move(jcell));
        }
        rows.push_back(std::move(jrow));
    }
    return Json{{"type", "gridtiling"}, {"k", inst.k}, {"n", inst.n}, {"cells", std::move(rows)}};
}

Json to_json(const GtAssignment& a) {
    Json rows = Json::array();
    for (int j = 1; j <= a.k; ++j) {
        Json row = Json::array();
        for (int i = 1; i <= a.k; ++i) {
            const auto& c = a.at(i, j);
            row.push_back(c ? Json::array({c->first, c->second}) : Json(nullptr));
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

Json to_json(const BcspInstance& inst) {
    Json cons = Json::array();
    for (const auto& [key, pairs] : inst.constraints) {
        Json jp = Json::array();
        for (const auto& [a, b] : pairs) jp.push_back(Json::array({a, b}));
        cons.push_back(Json{{"i", key.first}, {"j", key.second}, {"pairs", std::move(jp)}});
    }
    return Json{{"type", "bcsp"}, {"k", inst.k}, {"n", inst.n}, {"constraints", std::move(cons)}};
}

Json to_json(const KSumInstance& inst) {
    Json xs = Json::array();
    for (const auto& xi : inst.x) xs.push_back(to_json(xi));
    return Json{{"type", "ksum"},
                {"n", inst.n()},
                {"k", inst.k},
                {"x", std::move(xs)},
                {"t", to_json(inst.t)},
                {"g", to_json(inst.g)}};
}

Json to_json(const ArrowheadReductionOutput& out) {
    Json j = to_json(out.b);
    j["meta"] = Json{{"alpha", to_json(out.alpha)},
                     {"beta", to_json(out.beta)},
                     {"gamma", to_json(out.gamma)},
                     {"delta", to_json(out.delta)},
                     {"epsilon", to_json(out.epsilon)},
                     {"theta", to_json(out.theta)},
                     {"sound_hi", to_json(out.sound_hi)},
                     {"complete_lo", to_json(out.complete_lo)},
                     {"K", out.kk}};
    return j;
}

namespace {

Json labels_json(const std::vector<VectorLabel>& labels) {
    Json out = Json::array();
    for (const auto& l : labels) out.push_back(Json::array({l.i, l.j, l.x, l.y}));
    return out;
}

}  // namespace

Json to_json(const OrthoReductionOutput& out) {
    Json j = to_json(out.vectors);
    j["meta"] = Json{{"K", out.kk}, {"labels", labels_json(out.labels)}};
    return j;
}

Json to_json(const DetMaxReductionOutput& out) {
    Json j = to_json(out.a_tilde);
    j["meta"] = Json{{"K", out.kk}, {"ell", out.ell}, {"labels", labels_json(out.labels)}};
    return j;
}

namespace {

void need(const Json& j, const char* key) {
    if (!j.contains(key)) throw std::invalid_argument(std::string("missing field \"") + key + "\"");
}

int int_field(const Json& j, const char* key) {
    need(j, key);
    if (!j[key].is_number_integer()) throw std::invalid_argument(std::string("field \"") + key + "\" must be an integer");
    return j[key].get<int>();
}

}  // namespace

Rat rat_from_json(const Json& j) {
    if (!j.is_string()) throw std::invalid_argument("rational must be a string");
    return Rat::parse(j.get<std::string>());
}

RatVectorSet vectors_from_json(const Json& j) {
    RatVectorSet v;
    v.d = int_field(j, "d");
    need(j, "vectors");
    for (const auto& row : j["vectors"]) {
        RatVec vec;
        for (const auto& e : row) vec.push_back(rat_from_json(e));
        v.vectors.push_back(std::move(vec));
    }
    v.validate();
    return v;
}

GramMatrix gram_from_json(const Json& j) {
    GramMatrix g;
    int n = int_field(j, "n");
    if (n < 1) throw std::invalid_argument("gram: order must be >= 1");
    need(j, "entries");
    need(j, "psd");
    std::string psd = j["psd"].get<std::string>();
    if (psd == "constructed") {
        g.psd = PsdProvenance::ConstructedFromVectors;
    } else if (psd == "asserted") {
        g.psd = PsdProvenance::Asserted;
    } else {
        throw std::invalid_argument("gram: psd must be \"constructed\" or \"asserted\"");
    }
    const auto& rows = j["entries"];
    if (static_cast<int>(rows.size()) != n) throw std::invalid_argument("gram: wrong row count");
    g.m = Matrix(n);
    for (int i = 0; i < n; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != n) {
            throw std::invalid_argument("gram: wrong column count");
        }
        for (int c = 0; c < n; ++c) g.m.at(i, c) = rat_from_json(rows[static_cast<size_t>(i)][static_cast<size_t>(c)]);
    }
    g.validate();
    return g;
}

GridTilingInstance gridtiling_from_json(const Json& j) {
    GridTilingInstance inst;
    inst.k = int_field(j, "k");
    inst.n = int_field(j, "n");
    need(j, "cells");
    for (const auto& row : j["cells"]) {
        std::vector<std::vector<IntPair>> r;
        for (const auto& cell : row) {
            std::vector<IntPair> c;
            for (const auto& p : cell) {
                if (!p.is_array() || p.size() != 2) throw std::invalid_argument("gridtiling: pair must be [x,y]");
                c.emplace_back(p[0].get<int>(), p[1].get<int>());
            }
            r.push_back(std::move(c));
        }
        inst.cells.push_back(std::move(r));
    }
    inst.validate();
    return inst;
}

GtAssignment assignment_from_json(const Json& j, int k) {
    GtAssignment a = GtAssignment::empty(k);
    if (static_cast<int>(j.size()) != k) throw std::invalid_argument("assignment: wrong row count");
    for (int row = 1; row <= k; ++row) {
        const auto& jrow = j[static_cast<size_t>(row - 1)];
        if (static_cast<int>(jrow.size()) != k) throw std::invalid_argument("assignment: wrong column count");
        for (int col = 1; col <= k; ++col) {
            const auto& p = jrow[static_cast<size_t>(col - 1)];
            if (p.is_null()) continue;
            if (!p.is_array() || p.size() != 2) throw std::invalid_argument("assignment: pair must be [x,y]");
            a.at(col, row) = IntPair{p[0].get<int>(), p[1].get<int>()};
        }
    }
    return a;
}

BcspInstance bcsp_from_json(const Json& j) {
    BcspInstance inst;
    inst.k = int_field(j, "k");
    inst.n = int_field(j, "n");
    need(j, "constraints");
    for (const auto& c : j["constraints"]) {
        int i = int_field(c, "i");
        int jj = int_field(c, "j");
        need(c, "pairs");
        std::vector<IntPair> pairs;
        for (const auto& p : c["pairs"]) {
            if (!p.is_array() || p.size() != 2) throw std::invalid_argument("bcsp: pair must be [a,b]");
            pairs.emplace_back(p[0].get<int>(), p[1].get<int>());
        }
        if (i == jj) throw std::invalid_argument("bcsp: constraint on a single variable");
        if (i > jj) {  // store from the smaller index, coordinates swapped
            std::swap(i, jj);
            for (auto& [a, b] : pairs) std::swap(a, b);
        }
        if (!inst.constraints.emplace(std::make_pair(i, jj), std::move(pairs)).second) {
            throw std::invalid_argument("bcsp: duplicate constraint for a variable pair");
        }
    }
    inst.validate();
    return inst;
}

KSumInstance ksum_from_json(const Json& j) {
    KSumInstance inst;
    inst.k = int_field(j, "k");
    need(j, "x");
    need(j, "t");
    need(j, "g");
    for (const auto& e : j["x"]) inst.x.push_back(rat_from_json(e));
    inst.t = rat_from_json(j["t"]);
    inst.g = rat_from_json(j["g"]);
    if (j.contains("n") && int_field(j, "n") != inst.n()) {
        throw std::invalid_argument("ksum: \"n\" does not match the number of values");
    }
    inst.validate();
    return inst;
}

std::string instance_type(const Json& j) {
    need(j, "type");
    return j["type"].get<std::string>();
}

Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    Json j;
    try {
        in >> j;
    } catch (const Json::parse_error& e) {
        throw std::invalid_argument("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void write_json_file(const std::string& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot open file for writing: " + path);
    out << dump(j);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace detmax
