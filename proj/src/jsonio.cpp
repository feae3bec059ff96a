#include "fdo/jsonio.hpp"

#include <nlohmann/json.hpp>

#include "fdo/textio.hpp"

namespace fdo::jsonio {

json to_json(const Scalar& v) { return v.str(); }

json to_json(const XSeries& s) {
    json j;
    j["text"] = textio::format(s);
    json coeffs = json::array();
    for (int d = 0; d <= s.top_deg(); ++d) coeffs.push_back(s.at(d).str());
    j["coeffs"] = std::move(coeffs);
    j["prec_x"] = s.exact() ? json("exact") : json(s.prec());
    return j;
}

json to_json(const ZSeries& s) {
    json j;
    j["text"] = textio::format(s);
    json terms = json::array();
    for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it)
        terms.push_back(json::array({it->first, it->second.str()}));
    j["terms"] = std::move(terms);
    j["floor_exp"] = s.exact() ? json("exact") : json(s.floor());
    return j;
}

json to_json(const PsDO& p) {
    json j;
    j["text"] = textio::format(p);
    json terms = json::array();
    for (auto it = p.cells().rbegin(); it != p.cells().rend(); ++it) {
        json t;
        t["order"] = it->first;
        t["coeff"] = to_json(it->second);
        terms.push_back(std::move(t));
    }
    j["terms"] = std::move(terms);
    j["floor_ord"] = p.exact_tail() ? json("exact") : json(p.floor());
    return j;
}

json to_json(const FracOp& f) {
    json j;
    j["text"] = textio::format(f);
    j["num"] = to_json(f.num());
    j["den"] = to_json(f.den());
    j["reduced"] = f.reduced();
    return j;
}

json to_json(const RatPoly2& f) {
    json j;
    j["text"] = textio::format(f);
    json terms = json::array();
    for (const auto& [key, coef] : f.terms())
        terms.push_back(json::array({key.first, key.second, coef.str()}));
    j["terms"] = std::move(terms);
    return j;
}

json to_json(const Plane& w) {
    json j;
    j["depth"] = w.depth();
    j["floor_exp"] = w.floor == kExactFloor ? json("exact") : json(w.floor);
    json basis = json::array();
    for (const auto& v : w.basis) basis.push_back(textio::format(v));
    j["basis"] = std::move(basis);
    return j;
}

json to_json(const MembershipResult& r) {
    json j;
    j["verdict"] = cert_name(r.verdict);
    j["tested"] = r.tested;
    if (r.verdict == Cert::No) {
        j["witness_n"] = r.witness_n;
        j["residual"] = textio::format(*r.residual);
    }
    return j;
}

json to_json(const SpectralCert& c) {
    json j;
    j["f"] = textio::format(c.f);
    j["quotient_dim"] = c.quotient_dim;
    j["stabilized"] = c.stabilized;
    j["rows_used"] = c.rows_used;
    json basis = json::array();
    for (const auto& v : c.excess_basis) basis.push_back(textio::format(v));
    j["excess_basis"] = std::move(basis);
    return j;
}

json to_json(const FracCert& c) {
    json j;
    j["verdict"] = cert_name(c.verdict);
    j["excess"] = c.excess;
    j["stabilized"] = c.stabilized;
    json basis = json::array();
    for (const auto& v : c.excess_basis) basis.push_back(textio::format(v));
    j["excess_basis"] = std::move(basis);
    if (c.denominator) j["denominator"] = textio::format(*c.denominator);
    return j;
}

json to_json(const RankResult& r) {
    json j;
    j["rank"] = r.rank;
    j["stabilized"] = r.stabilized;
    j["deg_bound"] = r.deg_bound;
    return j;
}

json to_json(const BCReport& r) {
    json j;
    j["n_used"] = r.n_used;
    j["span_dim"] = r.span_dim;
    j["bound"] = r.bound;
    j["residual_window"] = r.residual_window;
    if (r.relation) j["relation"] = textio::format(*r.relation);
    json all = json::array();
    for (const auto& f : r.relations) all.push_back(textio::format(f));
    j["relations"] = std::move(all);
    return j;
}

json to_json(const DordResult& r) {
    json j;
    j["dord"] = r.dord;
    j["witness"] = textio::format(r.witness);
    return j;
}

json to_json(const DiffCert& c) {
    json j;
    j["verdict"] = cert_name(c.verdict);
    if (c.quotient) j["quotient"] = textio::format(*c.quotient);
    if (c.verdict == Cert::No) {
        j["witness_power"] = c.witness_power;
        j["witness"] = textio::format(*c.witness);
    }
    return j;
}

json to_json(const SectionCheck& c) {
    json j;
    switch (c.kind) {
        case SectionKind::Preserving: j["kind"] = "preserving"; break;
        case SectionKind::RationalSection: j["kind"] = "rational-section"; break;
        case SectionKind::Unknown: j["kind"] = "unknown-at-precision"; break;
    }
    j["excess"] = c.excess;
    j["stabilized"] = c.stabilized;
    j["tested"] = c.tested;
    j["depth_used"] = c.depth_used;
    return j;
}

Plane plane_from_json(const json& j) {
    std::vector<ZSeries> basis;
    for (const auto& t : j.at("basis")) basis.push_back(textio::parse_zseries(t.get<std::string>()));
    int depth = j.at("depth").get<int>();
    return make_plane(std::move(basis), depth);
}

} // namespace fdo::jsonio
