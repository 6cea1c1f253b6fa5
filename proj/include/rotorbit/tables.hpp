#pragma once

#include <algorithm>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rotorbit/poly.hpp"
#include "rotorbit/rotation.hpp"

namespace rotorbit {

/// One halved-triplet case from the published classification of finite
/// rotation pairs: the triplet, keyed by the family whose halving produced
/// it (a4 = tetrahedral, s4 = octahedral, a5 = icosahedral).
struct CaseSpec {
  std::string id;
  Rational tx, ty;  // multiples of pi
  std::string phi_token;

  Triplet triplet() const {
    return Triplet::exact(Angle(tx), Angle(ty), cosphi_from_token(phi_token));
  }
};

/// All distinct halved-triplet cases, one per published table row.
inline const std::vector<CaseSpec>& halving_cases() {
  static const std::vector<CaseSpec> cases = {
      {"a4-01", Rational(1, 2), Rational(2, 3), "sqrt(1/3)"},
      {"a4-02", Rational(1, 1), Rational(1, 3), "sqrt(1/3)"},
      {"a4-03", Rational(1, 1), Rational(2, 3), "sqrt(1/3)"},
      {"a4-04", Rational(1, 3), Rational(2, 3), "1/3"},
      {"a4-05", Rational(2, 3), Rational(2, 3), "1/3"},
      {"s4-01", Rational(1, 2), Rational(2, 3), "sqrt(2/3)"},
      {"s4-02", Rational(1, 1), Rational(1, 3), "sqrt(2/3)"},
      {"s4-03", Rational(1, 1), Rational(2, 3), "sqrt(2/3)"},
      {"s4-04", Rational(1, 2), Rational(1, 2), "sqrt(1/2)"},
      {"s4-05", Rational(1, 1), Rational(1, 4), "sqrt(1/2)"},
      {"s4-06", Rational(1, 1), Rational(3, 4), "sqrt(1/2)"},
      {"s4-07", Rational(1, 3), Rational(1, 2), "sqrt(1/3)"},
      {"s4-08", Rational(2, 3), Rational(1, 4), "sqrt(1/3)"},
      {"s4-09", Rational(2, 3), Rational(3, 4), "sqrt(1/3)"},
      {"s4-10", Rational(2, 3), Rational(1, 2), "sqrt(1/3)"},
      {"s4-11", Rational(1, 2), Rational(1, 4), "0"},
      {"s4-12", Rational(1, 2), Rational(3, 4), "0"},
      {"a5-01", Rational(1, 2), Rational(2, 3), "phi23"},
      {"a5-02", Rational(1, 1), Rational(1, 3), "phi23"},
      {"a5-03", Rational(1, 1), Rational(2, 3), "phi23"},
      {"a5-04", Rational(1, 2), Rational(2, 5), "phi25_1"},
      {"a5-05", Rational(1, 1), Rational(1, 5), "phi25_1"},
      {"a5-06", Rational(1, 2), Rational(4, 5), "phi25_1"},
      {"a5-07", Rational(1, 1), Rational(2, 5), "phi25_1"},
      {"a5-08", Rational(1, 1), Rational(3, 5), "phi25_1"},
      {"a5-09", Rational(1, 1), Rational(4, 5), "phi25_1"},
      {"a5-10", Rational(1, 2), Rational(2, 5), "phi25_2"},
      {"a5-11", Rational(1, 1), Rational(1, 5), "phi25_2"},
      {"a5-12", Rational(1, 2), Rational(4, 5), "phi25_2"},
      {"a5-13", Rational(1, 1), Rational(2, 5), "phi25_2"},
      {"a5-14", Rational(1, 1), Rational(3, 5), "phi25_2"},
      {"a5-15", Rational(1, 1), Rational(4, 5), "phi25_2"},
      {"a5-16", Rational(2, 3), Rational(1, 3), "phi33"},
      {"a5-17", Rational(1, 3), Rational(2, 5), "phi35_2"},
      {"a5-18", Rational(1, 3), Rational(4, 5), "phi35_2"},
  };
  return cases;
}

struct CaseRow {
  std::string id;
  CaseSpec spec;
  MQ trace;
  RationalPoly min_poly;
  int degree = 0;
  RootOfUnityVerdict root_of_unity;
};

inline CaseRow compute_case_row(const CaseSpec& spec) {
  CaseRow row;
  row.id = spec.id;
  row.spec = spec;
  row.trace = trace_product_exact(spec.triplet());
  row.min_poly = minimal_poly_zeta(row.trace);
  row.degree = row.min_poly.degree();
  row.root_of_unity = is_cyclotomic(row.min_poly);
  return row;
}

inline std::vector<CaseRow> compute_all_case_rows() {
  std::vector<CaseRow> rows;
  rows.reserve(halving_cases().size());
  for (const auto& spec : halving_cases()) rows.push_back(compute_case_row(spec));
  return rows;
}

/// Distinct quadratic middle coefficients a of x^2 + a x + 1 among the
/// degree-2 rows that are not roots of unity, ascending.
inline std::vector<Rational> quadratic_noncyclotomic_coeffs(const std::vector<CaseRow>& rows) {
  std::vector<Rational> out;
  for (const auto& r : rows)
    if (r.degree == 2 && !r.root_of_unity.is_root_of_unity) out.push_back(r.min_poly[1]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

/// Distinct (a, b) pairs of x^4 + a x^3 + b x^2 + a x + 1 among the
/// degree-4 rows that are not roots of unity, ascending lexicographically.
inline std::vector<std::pair<Rational, Rational>> quartic_noncyclotomic_pairs(
    const std::vector<CaseRow>& rows) {
  std::vector<std::pair<Rational, Rational>> out;
  for (const auto& r : rows)
    if (r.degree == 4 && !r.root_of_unity.is_root_of_unity)
      out.emplace_back(r.min_poly[3], r.min_poly[2]);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct GoldenTable {
  struct Row {
    std::string id;
    Rational tx, ty;
    std::string phi_token;
    MQ trace;
    RationalPoly min_poly;
    int degree = 0;
  };
  std::vector<Row> rows;
  std::vector<Rational> quadratic_noncyclotomic;
  std::vector<std::pair<Rational, Rational>> quartic_noncyclotomic;
};

namespace detail {

inline std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) parts.push_back(trim(item));
  return parts;
}

inline RationalPoly parse_poly_coeffs(const std::string& s) {
  std::vector<Rational> cs;
  for (const auto& piece : split(s, ',')) cs.push_back(parse_rational(piece));
  return RationalPoly(std::move(cs));
}

}  // namespace detail

/// Parses the shipped case table.  Format (pipe-separated):
///   id | theta_x | theta_y | phi | trace | fzeta (lowest first) | deg
/// plus trailing [quadratic-noncyclotomic] / [quartic-noncyclotomic] lists.
inline GoldenTable load_golden_table(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open case table '" + path + "'");
  GoldenTable table;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    if (line.rfind("[quadratic-noncyclotomic]", 0) == 0) {
      std::stringstream ss(line.substr(25));
      std::string tok;
      while (ss >> tok) table.quadratic_noncyclotomic.push_back(parse_rational(tok));
      continue;
    }
    if (line.rfind("[quartic-noncyclotomic]", 0) == 0) {
      std::stringstream ss(line.substr(23));
      std::string tok;
      while (ss >> tok) {
        if (tok.size() < 2 || tok.front() != '(' || tok.back() != ')')
          throw parse_error("bad pair token '" + tok + "' in case table");
        auto parts = detail::split(tok.substr(1, tok.size() - 2), ',');
        if (parts.size() != 2) throw parse_error("bad pair token '" + tok + "' in case table");
        table.quartic_noncyclotomic.emplace_back(parse_rational(parts[0]),
                                                 parse_rational(parts[1]));
      }
      continue;
    }
    auto cols = detail::split(line, '|');
    if (cols.size() != 7) throw parse_error("bad case table row: '" + line + "'");
    GoldenTable::Row row;
    row.id = cols[0];
    row.tx = parse_rational(cols[1]);
    row.ty = parse_rational(cols[2]);
    row.phi_token = cols[3];
    row.trace = parse_mq(cols[4]);
    row.min_poly = detail::parse_poly_coeffs(cols[5]);
    row.degree = std::stoi(cols[6]);
    table.rows.push_back(std::move(row));
  }
  return table;
}

/// Exact-equality diff of regenerated rows against the stored table.
/// Returns human-readable mismatch descriptions; empty means clean.
inline std::vector<std::string> diff_against_golden(const std::vector<CaseRow>& rows,
                                                    const GoldenTable& golden) {
  std::vector<std::string> diffs;
  if (rows.size() != golden.rows.size())
    diffs.push_back("row count: computed " + std::to_string(rows.size()) + ", stored " +
                    std::to_string(golden.rows.size()));
  const std::size_t n = std::min(rows.size(), golden.rows.size());
  for (std::size_t i = 0; i < n; ++i) {
    const CaseRow& c = rows[i];
    const GoldenTable::Row& g = golden.rows[i];
    if (c.id != g.id) {
      diffs.push_back("row " + std::to_string(i) + ": id '" + c.id + "' vs '" + g.id + "'");
      continue;
    }
    if (c.spec.tx != g.tx || c.spec.ty != g.ty || c.spec.phi_token != g.phi_token)
      diffs.push_back(c.id + ": triplet mismatch");
    if (!(c.trace == g.trace))
      diffs.push_back(c.id + ": trace " + mq_to_string(c.trace) + " vs " + mq_to_string(g.trace));
    if (c.min_poly != g.min_poly)
      diffs.push_back(c.id + ": fzeta " + c.min_poly.str() + " vs " + g.min_poly.str());
    if (c.degree != g.degree) diffs.push_back(c.id + ": degree mismatch");
  }
  auto quad = quadratic_noncyclotomic_coeffs(rows);
  if (quad != golden.quadratic_noncyclotomic) diffs.push_back("quadratic-noncyclotomic list");
  auto quart = quartic_noncyclotomic_pairs(rows);
  if (quart != golden.quartic_noncyclotomic) diffs.push_back("quartic-noncyclotomic list");
  return diffs;
}

inline std::string default_case_table_path() {
#ifdef ROTORBIT_DATA_DIR
  return std::string(ROTORBIT_DATA_DIR) + "/case_table.txt";
#else
  return "data/case_table.txt";
#endif
}

}  // namespace rotorbit
