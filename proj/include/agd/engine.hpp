// Pipeline orchestration per rank: the DS route through gauge fixing and the
// chart chain, the orbit-space route through the Gram metric, golden
// reference data from the worked examples, serialization, caching and the
// verification suites behind the CLI.
#pragma once

#include <filesystem>
#include <memory>
#include <optional>

#include "agd/central.hpp"
#include "agd/dsreduce.hpp"
#include "agd/orbit.hpp"
#include "agd/pencil.hpp"

namespace agd {

inline constexpr const char* kEngineVersion = "agd-0.1.0";

struct DsRoute {
    int r = 0;
    std::shared_ptr<LieData> lie;
    GaugeSolution gauge;
    Chart u_to_z, z_to_s, s_to_t;
    LocalBracket Bu, Bz, Bs, Bt;  // second bracket along the chart chain
    LocalBracket B1s, B1t;        // compatible bracket and its transport
    FlatPencil pencil;            // t-chart
    FrobeniusPotential potential;
    QuadScalar w_central_term;
};

// Full Drinfeld-Sokolov route. `certify` turns on the symbolic gauge
// invariance certificate inside reduced_bracket (quadratic cost in entry
// size; the default covers the desk ranks).
DsRoute run_ds_route(int r, bool certify = true);

struct OrbitRoute {
    int r = 0;
    Mat<DiffPoly> gram_z;  // Omega2(z) from power-sum gradients
    Chart z_to_s, s_to_t;
    FlatPencil pencil;  // t-chart
    FrobeniusPotential potential;
};

OrbitRoute run_orbit_route(int r);

// ---- golden data from the worked examples ----
LocalBracket golden_u_bracket(int r);       // r = 2, 3
LocalBracket golden_z_bracket_gl2();
LocalBracket golden_s_bracket_gl3();
FrobeniusPotential golden_potential(int r);  // r = 2, 3, 4
Mat<DiffPoly> golden_omega2_t(int r);        // r = 2, 3, 4
Mat<DiffPoly> golden_gram_gl4();             // Omega2(z) of the gl4 example
std::vector<TowerScalar> btype_map(int r);   // r = 3, 4

// ---- serialization ----
std::string quad_to_json(const QuadScalar& q);
QuadScalar quad_from_json(const std::string& text);
std::string bracket_to_json(const LocalBracket& B);
LocalBracket bracket_from_json(const std::string& text);
std::string potential_to_json(const FrobeniusPotential& F);
FrobeniusPotential potential_from_json(const std::string& text);
std::string chart_to_json(const Chart& c);
std::string matrix_to_json(const Mat<DiffPoly>& m);
std::string matrix_to_json(const Mat<QuadScalar>& m);
std::string central_report_to_json(const CentralInvariantReport& rep);

std::string bracket_to_latex(const LocalBracket& B);
std::string potential_to_latex(const FrobeniusPotential& F);
std::string bracket_to_text(const LocalBracket& B);
std::string chart_to_latex(const Chart& c);
std::string chart_to_text(const Chart& c);

// ---- cache ----
struct Cache {
    std::filesystem::path dir;
    explicit Cache(std::filesystem::path d) : dir(std::move(d)) {}
    std::optional<std::string> load(const std::string& key) const;
    void store(const std::string& key, const std::string& payload) const;  // write + rename
    std::filesystem::path path_for(const std::string& key) const;
};
std::filesystem::path default_cache_dir();

// ---- verification ----
struct VerifyItem {
    std::string name;
    bool pass = false;
    std::string detail;
};
std::vector<VerifyItem> run_verify_set(const std::string& set, RootChoice root);

}  // namespace agd
