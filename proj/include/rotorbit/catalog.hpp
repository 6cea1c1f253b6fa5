#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "rotorbit/holonomy.hpp"
#include "rotorbit/rotation.hpp"
#include "rotorbit/tables.hpp"

namespace rotorbit {

/// One finite-pair catalog row: the triplet as published (angles in [0, 2)),
/// the expected group label and order.
struct CatalogEntry {
  std::string id;
  Rational tx, ty;  // multiples of pi
  std::string phi_token;
  GroupLabel label;
  int order = 0;

  /// Numeric generator pair; valid for the full [0, 2) angle range.
  RotationPair pair() const {
    CosPhi phi = cosphi_from_token(phi_token);
    Rotation3 u = u_of_phi(phi);
    return {c_of_theta(Angle(tx)), u * c_of_theta(Angle(ty)) * u.transpose()};
  }

  /// The two halved triplets (tx/2, ty) and (tx, ty/2), folded into the
  /// exact-analysis range [0, pi] (replacing theta by 2*pi - theta flips a
  /// generator to its inverse and leaves the generated group unchanged).
  std::vector<Triplet> halved_triplets() const {
    CosPhi phi = cosphi_from_token(phi_token);
    Angle ax(tx), ay(ty);
    return {Triplet::exact(ax.halved().folded(), ay.folded(), phi),
            Triplet::exact(ax.folded(), ay.halved().folded(), phi)};
  }
};

/// Parses the shipped catalog (same pipe-separated layout it is stored in).
inline std::vector<CatalogEntry> load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw parse_error("cannot open catalog '" + path + "'");
  std::vector<CatalogEntry> entries;
  std::string line;
  while (std::getline(in, line)) {
    line = detail::trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto cols = detail::split(line, '|');
    if (cols.size() != 6) throw parse_error("bad catalog row: '" + line + "'");
    CatalogEntry e;
    e.id = cols[0];
    e.tx = parse_rational(cols[1]);
    e.ty = parse_rational(cols[2]);
    e.phi_token = cols[3];
    e.label = GroupLabel::parse(cols[4]);
    e.order = std::stoi(cols[5]);
    entries.push_back(std::move(e));
  }
  return entries;
}

inline std::string default_catalog_path() {
#ifdef ROTORBIT_DATA_DIR
  return std::string(ROTORBIT_DATA_DIR) + "/catalog.txt";
#else
  return "data/catalog.txt";
#endif
}

/// Per-entry result of re-deriving the catalog by group closure.
struct CatalogReport {
  struct Line {
    std::string id;
    GroupLabel expected_label;
    int expected_order = 0;
    bool complete = false;
    int order = 0;
    GroupLabel label;
    bool pass = false;
  };
  std::vector<Line> lines;
  int failures = 0;
};

/// Runs close_group + classify_finite on every entry and compares against
/// the stored labels and orders.
inline CatalogReport catalog_verify(const std::vector<CatalogEntry>& entries, int cap = 10000,
                                    double tol = 1e-9) {
  CatalogReport report;
  for (const auto& e : entries) {
    CatalogReport::Line line;
    line.id = e.id;
    line.expected_label = e.label;
    line.expected_order = e.order;
    auto pair = e.pair();
    GroupClosure g = close_group({pair.x, pair.y}, cap, tol);
    line.complete = g.complete();
    if (g.complete()) {
      line.order = g.order();
      try {
        line.label = classify_finite(g);
        line.pass = line.label == e.label && line.order == e.order;
      } catch (const unrecognized_group&) {
        line.pass = false;
      }
    }
    if (!line.pass) ++report.failures;
    report.lines.push_back(std::move(line));
  }
  return report;
}

}  // namespace rotorbit
