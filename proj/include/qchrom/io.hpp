#pragma once

// File formats: DIMACS .col graphs and JSON vector sets, strategies and
// certificates. Complex numbers are [re, im] pairs; matrices are flat
// row-major arrays of such pairs.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "qchrom/chromatic.hpp"
#include "qchrom/game.hpp"
#include "qchrom/graph.hpp"
#include "qchrom/ks.hpp"
#include "qchrom/reps.hpp"

namespace qchrom::io {

using nlohmann::json;

inline constexpr const char* kToolName = "qchrom";
inline constexpr const char* kToolVersion = "0.1.0";

struct DimacsGraph {
    Graph graph;
    std::vector<std::string> warnings;  // edge-count mismatch, dropped duplicates
};

DimacsGraph parse_dimacs(std::string_view text);
std::string write_dimacs(const Graph& g);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view contents);
DimacsGraph read_dimacs_file(const std::filesystem::path& path);

json complex_to_json(Complex z);
Complex complex_from_json(const json& j);
json vector_to_json(const CVector& v);
CVector vector_from_json(const json& j, int dimension = -1);
json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const json& j, int rows, int cols);

// Vector sets.
CanonicalizeReport parse_vector_set(const json& j, double default_tol = kDefaultTol);
json vector_set_to_json(const VectorSet& s);

// Strategies.
struct StrategyFile {
    bool quantum = true;
    POVMStrategy povm;
    ClassicalStrategy classical;
};

StrategyFile parse_strategy(const json& j);
json strategy_to_json(const POVMStrategy& s);
json strategy_to_json(const ClassicalStrategy& s);

// Certificates.
struct Metadata {
    double tol = kDefaultTol;
    double rank_tol = kDefaultRankTol;
    std::uint64_t seed = 1;
    std::uint64_t budget = 0;
};

json metadata_to_json(const Metadata& m);

json certificate(const std::string& kind, json payload, const Metadata& m);
const std::string& certificate_kind(const json& cert);
const json& certificate_payload(const json& cert, const std::string& expected_kind);

json coloring_payload(const ColoringCertificate& c);
ColoringCertificate coloring_from_payload(const json& p);
json orthrep_payload(const OrthogonalRepresentation& r);
OrthogonalRepresentation orthrep_from_payload(const json& p);
json matrixrep_payload(const MatrixRepresentation& r);
MatrixRepresentation matrixrep_from_payload(const json& p);
json qcoloring_payload(const QuantumColoring& qc);
QuantumColoring qcoloring_from_payload(const json& p);
json ks_witness_payload(const VectorSet& s, const std::vector<int>& labels, KSMode mode);
std::vector<int> ks_witness_from_payload(const json& p, const VectorSet& s, KSMode& mode);
json psd_witness_payload(const PSDWitness& w);
PSDWitness psd_witness_from_payload(const json& p);

}  // namespace qchrom::io
