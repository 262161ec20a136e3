#include "polynorm/serialization.hpp"

#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "polynorm/errors.hpp"

namespace polynorm {

namespace {

using ordered_json = nlohmann::ordered_json;

// Deterministic renderer: objects and arrays-of-composites go one entry per
// line, arrays of scalars stay inline, floats always use format_double.
void render(const ordered_json& j, std::string& out, int depth) {
  const std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
  const std::string pad_in(static_cast<std::size_t>(depth + 1) * 2, ' ');
  switch (j.type()) {
    case ordered_json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      std::size_t k = 0;
      for (auto it = j.begin(); it != j.end(); ++it, ++k) {
        out += pad_in;
        out += ordered_json(it.key()).dump();
        out += ": ";
        render(it.value(), out, depth + 1);
        out += (k + 1 < j.size()) ? ",\n" : "\n";
      }
      out += pad + "}";
      return;
    }
    case ordered_json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars_only = true;
      for (const auto& item : j) {
        if (item.is_structured()) scalars_only = false;
      }
      if (scalars_only) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          render(j[i], out, depth);
          if (i + 1 < j.size()) out += ", ";
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        out += pad_in;
        render(j[i], out, depth + 1);
        out += (i + 1 < j.size()) ? ",\n" : "\n";
      }
      out += pad + "]";
      return;
    }
    case ordered_json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

std::string render_document(const ordered_json& j) {
  std::string out;
  render(j, out, 0);
  out += "\n";
  return out;
}

ordered_json matrix_rows(const Eigen::MatrixXd& m) {
  ordered_json rows = ordered_json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    ordered_json row = ordered_json::array();
    for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(m(i, k));
    rows.push_back(std::move(row));
  }
  return rows;
}

ordered_json vector_entries(const Eigen::VectorXd& v) {
  ordered_json arr = ordered_json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v[i]);
  return arr;
}

const ordered_json& require(const ordered_json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw IoError(std::string("missing field '") + key + "'");
  return *it;
}

double get_double(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_number()) throw IoError(std::string("field '") + key + "' must be a number");
  return v.get<double>();
}

std::int64_t get_int(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_number_integer() && !v.is_number_unsigned()) {
    throw IoError(std::string("field '") + key + "' must be an integer");
  }
  return v.get<std::int64_t>();
}

std::string get_string(const ordered_json& j, const char* key) {
  const ordered_json& v = require(j, key);
  if (!v.is_string()) throw IoError(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

Eigen::MatrixXd matrix_from_json(const ordered_json& j, const char* key) {
  const ordered_json& rows = require(j, key);
  if (!rows.is_array() || rows.empty()) {
    throw IoError(std::string("field '") + key + "' must be a non-empty array of rows");
  }
  const std::size_t width = rows[0].is_array() ? rows[0].size() : 0;
  Eigen::MatrixXd m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(width));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const ordered_json& row = rows[i];
    if (!row.is_array() || row.size() != width) {
      throw IoError(std::string("field '") + key + "' has ragged rows");
    }
    for (std::size_t k = 0; k < width; ++k) {
      if (!row[k].is_number()) {
        throw IoError(std::string("field '") + key + "' must contain numbers");
      }
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = row[k].get<double>();
    }
  }
  return m;
}

Eigen::VectorXd vector_from_json(const ordered_json& j, const char* key) {
  const ordered_json& arr = require(j, key);
  if (!arr.is_array()) throw IoError(std::string("field '") + key + "' must be an array");
  Eigen::VectorXd v(static_cast<Eigen::Index>(arr.size()));
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_number()) {
      throw IoError(std::string("field '") + key + "' must contain numbers");
    }
    v[static_cast<Eigen::Index>(i)] = arr[i].get<double>();
  }
  return v;
}

ordered_json body_to_json(const BodySpec& body) {
  ordered_json j;
  j["d"] = body.d();
  j["kind"] = to_string(body.kind());
  j["label"] = body.label();
  j["generators"] = matrix_rows(body.generators());
  if (body.sampling()) {
    ordered_json s;
    s["source"] = body.sampling()->source;
    s["p"] = body.sampling()->p;
    s["count"] = body.sampling()->count;
    s["seed"] = body.sampling()->seed;
    j["sampling"] = std::move(s);
  }
  return j;
}

BodySpec body_from_json_value(const ordered_json& j) {
  const int d = static_cast<int>(get_int(j, "d"));
  const BodyKind kind = body_kind_from_string(get_string(j, "kind"));
  const std::string label = j.contains("label") ? get_string(j, "label") : "unnamed";
  Eigen::MatrixXd generators = matrix_from_json(j, "generators");
  std::optional<SamplingInfo> sampling;
  if (j.contains("sampling")) {
    const ordered_json& s = j["sampling"];
    SamplingInfo info;
    info.source = get_string(s, "source");
    info.p = get_double(s, "p");
    info.count = static_cast<int>(get_int(s, "count"));
    info.seed = static_cast<std::uint64_t>(get_int(s, "seed"));
    sampling = std::move(info);
  }
  return BodySpec(d, kind, std::move(generators), label, std::move(sampling));
}

ordered_json parse_document(const std::string& text) {
  try {
    return ordered_json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("JSON parse failure: ") + e.what());
  }
}

std::string trim(const std::string& s) {
  const char* ws = " \t\r";
  const std::size_t begin = s.find_first_not_of(ws);
  if (begin == std::string::npos) return "";
  const std::size_t end = s.find_last_not_of(ws);
  return s.substr(begin, end - begin + 1);
}

bool parse_number(const std::string& token, double& out) {
  if (token.empty()) return false;
  errno = 0;
  char* end = nullptr;
  out = std::strtod(token.c_str(), &end);
  return errno == 0 && end == token.c_str() + token.size();
}

}  // namespace

std::string format_double(double value) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", value);
  return buf;
}

std::string approximant_to_json(const NormApproximant& appr) {
  ordered_json j;
  j["format_version"] = 1;
  j["d"] = appr.d();
  j["n"] = appr.n();
  j["ordering"] = "grlex";
  j["carrier_basis"] = matrix_rows(appr.carrier().transpose());
  j["core"] = matrix_rows(appr.core());
  j["w"] = vector_entries(appr.w());
  j["dim_D"] = appr.dim_D();
  j["constants"]["effective"] = appr.constant_effective();
  j["constants"]["theorem"] = appr.constant_theorem();
  j["body"] = body_to_json(appr.body());
  j["build"]["eps"] = appr.build_eps();
  j["build"]["seed"] = appr.body().sampling() ? appr.body().sampling()->seed : 0;
  return render_document(j);
}

NormApproximant approximant_from_json(const std::string& text) {
  ordered_json j = parse_document(text);
  if (get_int(j, "format_version") != 1) throw IoError("unsupported format_version");
  const int d = static_cast<int>(get_int(j, "d"));
  const int n = static_cast<int>(get_int(j, "n"));
  if (get_string(j, "ordering") != "grlex") {
    throw ValidationError("unsupported coordinate ordering");
  }
  Eigen::MatrixXd carrier = matrix_from_json(j, "carrier_basis").transpose();
  Eigen::MatrixXd core = matrix_from_json(j, "core");
  Eigen::VectorXd w = vector_from_json(j, "w");
  BodySpec body = body_from_json_value(require(j, "body"));
  if (body.d() != d) throw ValidationError("body dimension disagrees with approximant");
  const double eps = get_double(require(j, "build"), "eps");

  NormApproximant appr(std::move(body), n, std::move(carrier), std::move(core), std::move(w),
                       eps);
  if (static_cast<int>(get_int(j, "dim_D")) != appr.dim_D()) {
    throw ValidationError("stored dim_D disagrees with carrier rank");
  }
  const ordered_json& constants = require(j, "constants");
  const double effective = get_double(constants, "effective");
  const double theorem = get_double(constants, "theorem");
  if (std::abs(effective - appr.constant_effective()) >
          1e-12 * std::max(1.0, appr.constant_effective()) ||
      std::abs(theorem - appr.constant_theorem()) >
          1e-12 * std::max(1.0, appr.constant_theorem())) {
    throw ValidationError("stored constants disagree with recomputed values");
  }
  return appr;
}

void save_approximant(const NormApproximant& appr, const std::string& path) {
  write_text_file(path, approximant_to_json(appr));
}

NormApproximant load_approximant(const std::string& path) {
  return approximant_from_json(read_text_file(path));
}

BodySpec body_from_json(const std::string& text) {
  return body_from_json_value(parse_document(text));
}

BodySpec load_body(const std::string& path) { return body_from_json(read_text_file(path)); }

namespace {

const char* status_name(InvarianceStatus status) {
  switch (status) {
    case InvarianceStatus::Pass: return "pass";
    case InvarianceStatus::Fail: return "fail";
    case InvarianceStatus::NotApplicable: return "not-applicable";
  }
  return "unknown";
}

ordered_json sandwich_to_json(const VerificationReport& r) {
  ordered_json j;
  j["samples"] = r.samples;
  j["violations_lower"] = r.violations_lower;
  j["violations_upper"] = r.violations_upper;
  j["max_ratio"] = r.max_ratio;
  j["min_upper_ratio"] = r.min_upper_ratio;
  j["constant_effective"] = r.constant_effective;
  j["constant_theorem"] = r.constant_theorem;
  j["histogram"]["lo"] = r.histogram.lo;
  j["histogram"]["hi"] = r.histogram.hi;
  j["histogram"]["bins"] = r.histogram.bins;
  j["timing"]["samples"] = r.timing.samples;
  j["timing"]["mean_ns_eval_p"] = r.timing.mean_ns_eval_p;
  j["timing"]["mean_ns_exact_norm"] = r.timing.mean_ns_exact_norm;
  j["seed"] = r.seed;
  return j;
}

}  // namespace

std::string report_to_json(const VerificationReport& sandwich,
                           const HomogeneityResult& homogeneity,
                           const InvarianceResult& signed_permutations,
                           const InvarianceResult& permutations,
                           const NormApproximant& appr) {
  ordered_json j;
  j["label"] = appr.body().label();
  j["kind"] = to_string(appr.body().kind());
  j["d"] = appr.d();
  j["n"] = appr.n();
  j["dim_D"] = appr.dim_D();
  j["sandwich"] = sandwich_to_json(sandwich);
  j["homogeneity"]["pass"] = homogeneity.pass;
  j["homogeneity"]["worst_rel_err"] = homogeneity.worst_rel_err;
  j["invariance_signed_permutations"]["status"] = status_name(signed_permutations.status);
  j["invariance_signed_permutations"]["worst_rel_err"] = signed_permutations.worst_rel_err;
  j["invariance_permutations"]["status"] = status_name(permutations.status);
  j["invariance_permutations"]["worst_rel_err"] = permutations.worst_rel_err;
  return render_document(j);
}

std::string report_to_csv(const VerificationReport& sandwich,
                          const HomogeneityResult& homogeneity,
                          const InvarianceResult& signed_permutations,
                          const InvarianceResult& permutations,
                          const NormApproximant& appr) {
  (void)appr;
  std::string out =
      "check,status,samples,violations_lower,violations_upper,max_ratio,"
      "min_upper_ratio,worst_rel_err,constant_effective,constant_theorem,seed\n";
  const bool sandwich_pass =
      sandwich.violations_lower == 0 && sandwich.violations_upper == 0;
  out += "sandwich," + std::string(sandwich_pass ? "pass" : "fail") + "," +
         std::to_string(sandwich.samples) + "," + std::to_string(sandwich.violations_lower) +
         "," + std::to_string(sandwich.violations_upper) + "," +
         format_double(sandwich.max_ratio) + "," + format_double(sandwich.min_upper_ratio) +
         ",," + format_double(sandwich.constant_effective) + "," +
         format_double(sandwich.constant_theorem) + "," + std::to_string(sandwich.seed) + "\n";
  out += "homogeneity," + std::string(homogeneity.pass ? "pass" : "fail") + ",,,,,," +
         format_double(homogeneity.worst_rel_err) + ",,," + std::to_string(sandwich.seed) +
         "\n";
  out += "invariance-signed-permutations," +
         std::string(status_name(signed_permutations.status)) + ",,,,,," +
         format_double(signed_permutations.worst_rel_err) + ",,," +
         std::to_string(sandwich.seed) + "\n";
  out += "invariance-permutations," + std::string(status_name(permutations.status)) +
         ",,,,,," + format_double(permutations.worst_rel_err) + ",,," +
         std::to_string(sandwich.seed) + "\n";
  return out;
}

std::vector<Eigen::VectorXd> parse_points_csv(const std::string& path) {
  std::string text = read_text_file(path);
  if (text.size() >= 3 && text.compare(0, 3, "\xEF\xBB\xBF") == 0) text.erase(0, 3);

  std::vector<Eigen::VectorXd> points;
  std::istringstream lines(text);
  std::string line;
  std::size_t line_no = 0;
  Eigen::Index width = -1;
  bool first_content_line = true;

  while (std::getline(lines, line)) {
    ++line_no;
    const std::string content = trim(line);
    if (content.empty()) continue;

    std::vector<std::string> tokens;
    std::size_t start = 0;
    while (true) {
      const std::size_t comma = content.find(',', start);
      tokens.push_back(trim(content.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }

    std::vector<double> values(tokens.size());
    std::size_t numeric = 0;
    std::size_t first_bad = tokens.size();
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (parse_number(tokens[i], values[i])) {
        ++numeric;
      } else if (first_bad == tokens.size()) {
        first_bad = i;
      }
    }

    if (first_content_line && numeric == 0) {
      first_content_line = false;  // header row
      continue;
    }
    if (numeric != tokens.size()) {
      throw ValidationError("line " + std::to_string(line_no) + ": non-numeric field '" +
                            tokens[first_bad] + "'");
    }
    if (width < 0) {
      width = static_cast<Eigen::Index>(tokens.size());
    } else if (static_cast<Eigen::Index>(tokens.size()) != width) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected " +
                            std::to_string(width) + " fields, got " +
                            std::to_string(tokens.size()));
    }
    first_content_line = false;
    Eigen::VectorXd point(width);
    for (Eigen::Index i = 0; i < width; ++i) point[i] = values[static_cast<std::size_t>(i)];
    points.push_back(std::move(point));
  }
  return points;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw IoError("read failure on '" + path + "'");
  return buf.str();
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << content;
  out.flush();
  if (!out) throw IoError("write failure on '" + path + "'");
}

}  // namespace polynorm
