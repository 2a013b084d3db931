#pragma once

// JSON and CSV encodings of results. Field names and CSV columns are part of
// the command-line contract; keep them stable.

#include <prank/cartier.hpp>
#include <prank/covers.hpp>
#include <prank/search.hpp>
#include <prank/strata.hpp>
#include <prank/verify.hpp>

#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace prank::report {

using Json = nlohmann::ordered_json;

inline constexpr int kIndent = 2;

inline std::string dump(const Json& j) { return j.dump(kIndent) + "\n"; }

inline Json field_json(const ff::Field& F) {
    Json j;
    j["p"] = F.characteristic();
    j["degree"] = F.degree();
    if (F.degree() == 2) j["modulus"] = F.modulus_string();
    return j;
}

inline Json matrix_json(const Matrix& M) {
    Json rows = Json::array();
    for (std::size_t i = 0; i < M.rows(); ++i) {
        Json row = Json::array();
        for (std::size_t k = 0; k < M.cols(); ++k) row.push_back(M.at(i, k).to_string());
        rows.push_back(row);
    }
    return rows;
}

// ---------------------------------------------------------------------------
// ss5 records

inline Json to_json(const search::SearchResult& r) {
    Json j;
    j["p"] = r.p;
    j["field"] = r.extension ? "GF(p^2)" : "GF(p)";
    j["mode"] = std::string(search::to_string(r.mode));
    j["dv_form"] = std::string(search::to_string(r.form));
    j["found"] = r.found();
    Json sols = Json::array();
    for (const auto& s : r.solutions) sols.push_back(Json::array({s.u, s.v}));
    j["solutions"] = sols;
    j["counts"] = {{"tested", r.counts.tested},
                   {"excluded_uv", r.counts.excluded_uv},
                   {"excluded_gcd", r.counts.excluded_gcd},
                   {"excluded_singular", r.counts.excluded_singular}};
    j["grid"] = r.grid;
    j["story"] = {{"checked", r.story.checked}, {"prank_zero", r.story.prank_zero}, {"superspecial", r.story.superspecial}};
    j["elapsed_ms"] = r.elapsed_ms;
    return j;
}

inline search::SearchResult search_result_from_json(const Json& j) {
    search::SearchResult r;
    r.p = j.at("p").get<ff::u32>();
    r.extension = j.at("field").get<std::string>() == "GF(p^2)";
    r.mode = search::parse_mode(j.at("mode").get<std::string>());
    r.form = search::parse_dv_form(j.at("dv_form").get<std::string>());
    for (const auto& s : j.at("solutions")) r.solutions.push_back({s.at(0).get<ff::u64>(), s.at(1).get<ff::u64>()});
    const auto& c = j.at("counts");
    r.counts.tested = c.at("tested").get<ff::u64>();
    r.counts.excluded_uv = c.at("excluded_uv").get<ff::u64>();
    r.counts.excluded_gcd = c.at("excluded_gcd").get<ff::u64>();
    r.counts.excluded_singular = c.at("excluded_singular").get<ff::u64>();
    r.grid = j.at("grid").get<ff::u64>();
    const auto& s = j.at("story");
    r.story.checked = s.at("checked").get<ff::u64>();
    r.story.prank_zero = s.at("prank_zero").get<ff::u64>();
    r.story.superspecial = s.at("superspecial").get<ff::u64>();
    r.elapsed_ms = j.at("elapsed_ms").get<double>();
    return r;
}

inline const char* kSs5CsvHeader = "p,found,num_solutions,first_u,first_v,tested,elapsed_ms";

/// One CSV row; solution coordinates are field elements ("a" or "a+b*w").
inline std::string csv_row(const search::SearchResult& r) {
    std::ostringstream os;
    os << r.p << ',' << (r.found() ? 1 : 0) << ',' << r.solutions.size() << ',';
    if (r.found()) {
        const ff::Field F = r.extension ? ff::Field::quadratic(r.p) : ff::Field::prime(r.p);
        os << F.element_at(r.solutions[0].u).to_string() << ',' << F.element_at(r.solutions[0].v).to_string();
    } else {
        os << ',';
    }
    char ms[32];
    std::snprintf(ms, sizeof ms, "%.3f", r.elapsed_ms);
    os << ',' << r.counts.tested << ',' << ms;
    return os.str();
}

inline std::filesystem::path ss5_record_path(const std::filesystem::path& results_dir, ff::u32 p) {
    return results_dir / "ss5" / ("p=" + std::to_string(p) + ".json");
}

/// Write-to-temp then rename, so a reader never sees a partial record.
inline void write_atomic(const std::filesystem::path& path, const std::string& content) {
    std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot write " + tmp.string());
        out << content;
        if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

inline std::optional<Json> read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    try {
        return Json::parse(in);
    } catch (const Json::parse_error&) {
        return std::nullopt;
    }
}

// ---------------------------------------------------------------------------
// covers, strata, verify

inline Json to_json(const covers::QuotientTriple& t) {
    Json j;
    j["f1"] = t.f1.to_string();
    j["f2"] = t.f2.to_string();
    j["f3"] = t.f3.to_string();
    j["genera"] = Json::array({t.genera[0], t.genera[1], t.genera[2]});
    j["genus_total"] = t.genus_total;
    if (t.p_ranks) j["p_rank_components"] = Json::array({(*t.p_ranks)[0], (*t.p_ranks)[1], (*t.p_ranks)[2]});
    if (t.prank_total) j["p_rank_total"] = *t.prank_total;
    return j;
}

inline Json to_json(const strata::BoundaryComponent& c, std::optional<int> f_E = std::nullopt) {
    Json j;
    j["label"] = c.label();
    j["kind"] = std::string(strata::to_string(c.kind));
    j["g1"] = c.g1;
    j["g2"] = c.g2;
    j["dim"] = c.dim;
    j["contained_in"] = c.contained_in;
    if (f_E && c.parts.empty()) {
        const auto w = c.vf_window(*f_E);
        Json vf = Json::array();
        for (int f = w.lo; f <= w.hi; ++f) vf.push_back({{"f", f}, {"dim", c.vf_dim(f, *f_E)}});
        j["vf"] = vf;
    }
    if (!c.parts.empty()) {
        Json parts = Json::array();
        for (const auto& p : c.parts) parts.push_back(to_json(p, f_E));
        j["parts"] = parts;
    }
    return j;
}

inline Json to_json(const verify::Report& r) {
    Json j;
    j["suite"] = r.suite;
    j["passed"] = r.passed;
    j["seed"] = r.seed;
    j["cases"] = r.cases;
    j["failures"] = r.failures;
    j["elapsed_ms"] = r.elapsed_ms;
    Json counters = Json::object();
    for (const auto& [k, v] : r.counters) counters[k] = v;
    j["counters"] = counters;
    j["notes"] = r.notes;
    j["failure_details"] = r.failure_details;
    return j;
}

}  // namespace prank::report
