#pragma once

#include <Eigen/Core>
#include <string>
#include <vector>

#include "polynorm/approximant.hpp"
#include "polynorm/verify.hpp"

namespace polynorm {

/// Decimal rendering with 17 significant digits; round-trips doubles exactly.
std::string format_double(double value);

/// Approximant file format (JSON, format_version 1):
///   {format_version, d, n, ordering:"grlex", carrier_basis (dim_D rows of
///    length N), core (dim_D x dim_D), w (length N), dim_D,
///    constants:{effective, theorem}, body:{d, kind, generators, label
///    [, sampling]}, build:{eps, seed}}.
/// No timestamps or environment data: identical inputs produce identical
/// bytes. Loading re-validates every invariant.
std::string approximant_to_json(const NormApproximant& appr);
NormApproximant approximant_from_json(const std::string& text);
void save_approximant(const NormApproximant& appr, const std::string& path);
NormApproximant load_approximant(const std::string& path);

/// Body description {d, kind, generators, label[, sampling]} from JSON.
BodySpec body_from_json(const std::string& text);
BodySpec load_body(const std::string& path);

std::string report_to_json(const VerificationReport& sandwich,
                           const HomogeneityResult& homogeneity,
                           const InvarianceResult& signed_permutations,
                           const InvarianceResult& permutations,
                           const NormApproximant& appr);

/// Flat one-row-per-check form of the same report, for plotting.
std::string report_to_csv(const VerificationReport& sandwich,
                          const HomogeneityResult& homogeneity,
                          const InvarianceResult& signed_permutations,
                          const InvarianceResult& permutations,
                          const NormApproximant& appr);

/// Points CSV: one point per row, numeric columns, optional single header
/// row (a header has no numeric fields; a mix is an error). Blank lines are
/// skipped; errors name the offending line.
std::vector<Eigen::VectorXd> parse_points_csv(const std::string& path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

}  // namespace polynorm
