#pragma once

// JSON and CSV serialization of the library's value types.
//
//   SL2      {"nbar": int, "m": [[a,b],[g,d]], "det": 1|-1}
//   CMat     {"dim": N, "basis": "standard"|"knomial", "rows": [[[re,im],...],...]}
//   CVec     {"dim": N, "basis": ..., "v": [[re,im],...]}
//   AntiU    CMat fields plus "conj"
//   BlockMap {"n": n, "perm": [[[r,s],[r2,s2]],...], "blocks": {"r,s": rows}}
//   FidCand  {"dim": N, "psi": CVec, "defect": x, "worst_p": [p1,p2], "meta": {...}}
//
// Doubles are written in shortest round-trip form, so reading back is exact.

#include <iomanip>
#include <limits>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

#include "knomial/clifford.hpp"
#include "knomial/imprimitivity.hpp"
#include "knomial/sic.hpp"

namespace knomial {

using json = nlohmann::json;

/// Malformed or inconsistent serialized input.
class ParseError : public Error {
 public:
  using Error::Error;
};

namespace detail {

inline json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

inline cplx cplx_from(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("complex entries must be [re, im] pairs");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

inline Basis basis_from(const json& j) {
  const json& b = field(j, "basis");
  if (b == "standard") return Basis::standard;
  if (b == "knomial") return Basis::knomial;
  throw ParseError("unknown basis " + b.dump());
}

inline long long dim_from(const json& j) {
  const json& d = field(j, "dim");
  if (!d.is_number_integer() || d.get<long long>() < 1) throw ParseError("dim must be a positive integer");
  return d.get<long long>();
}

inline json rows_json(const Matrix& m) {
  json rows = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back(cplx_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Matrix rows_from(const json& rows, long long nr, long long nc) {
  if (!rows.is_array() || static_cast<long long>(rows.size()) != nr) throw ParseError("row count differs from dim");
  Matrix m(nr, nc);
  for (long long r = 0; r < nr; ++r) {
    const json& row = rows[static_cast<std::size_t>(r)];
    if (!row.is_array() || static_cast<long long>(row.size()) != nc) throw ParseError("row length differs from dim");
    for (long long c = 0; c < nc; ++c) m(r, c) = cplx_from(row[static_cast<std::size_t>(c)]);
  }
  return m;
}

}  // namespace detail

inline json to_json(const SL2& f) {
  return {{"nbar", f.nbar()},
          {"m", {{f.alpha(), f.beta()}, {f.gamma(), f.delta()}}},
          {"det", f.det_sign()}};
}

inline SL2 sl2_from_json(const json& j) {
  try {
    const auto nbar = detail::field(j, "nbar").get<long long>();
    const json& m = detail::field(j, "m");
    const int det = detail::field(j, "det").get<int>();
    return {m.at(0).at(0).get<long long>(), m.at(0).at(1).get<long long>(), m.at(1).at(0).get<long long>(),
            m.at(1).at(1).get<long long>(), nbar, det};
  } catch (const json::exception& e) {
    throw ParseError(e.what());
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what());
  }
}

inline json to_json(const CMat& m) {
  return {{"dim", m.dim()}, {"basis", basis_name(m.basis)}, {"rows", detail::rows_json(m.mat)}};
}

inline CMat cmat_from_json(const json& j) {
  const long long n = detail::dim_from(j);
  return {detail::rows_from(detail::field(j, "rows"), n, n), detail::basis_from(j)};
}

inline json to_json(const CVec& v) {
  json entries = json::array();
  for (Eigen::Index i = 0; i < v.vec.size(); ++i) entries.push_back(detail::cplx_json(v.vec(i)));
  return {{"dim", v.dim()}, {"basis", basis_name(v.basis)}, {"v", std::move(entries)}};
}

inline CVec cvec_from_json(const json& j) {
  const long long n = detail::dim_from(j);
  const json& v = detail::field(j, "v");
  if (!v.is_array() || static_cast<long long>(v.size()) != n) throw ParseError("vector length differs from dim");
  Vector out(n);
  for (long long i = 0; i < n; ++i) out(i) = detail::cplx_from(v[static_cast<std::size_t>(i)]);
  return {std::move(out), detail::basis_from(j)};
}

inline json to_json(const AntiU& u) {
  json j = to_json(CMat{u.mat, Basis::standard});
  j["conj"] = u.conj;
  return j;
}

inline AntiU antiu_from_json(const json& j) {
  const CMat m = cmat_from_json(j);
  const json& c = detail::field(j, "conj");
  if (!c.is_boolean()) throw ParseError("conj must be a boolean");
  return {m.mat, c.get<bool>()};
}

inline json to_json(const BlockMap& b) {
  json perm = json::array();
  json blocks = json::object();
  for (long long i = 0; i < b.n * b.n; ++i) {
    const RS src{i / b.n, i % b.n};
    const RS dst = b.target(src);
    perm.push_back({{src.r, src.s}, {dst.r, dst.s}});
    blocks[std::to_string(src.r) + "," + std::to_string(src.s)] = detail::rows_json(b.block(src));
  }
  return {{"n", b.n}, {"perm", std::move(perm)}, {"blocks", std::move(blocks)}};
}

inline json to_json(const FidCand& f) {
  return {{"dim", f.dim()},
          {"psi", to_json(f.psi)},
          {"defect", f.defect},
          {"worst_p", {f.worst_p.p1, f.worst_p.p2}},
          {"meta", f.meta}};
}

/// Reads a FidCand or a bare CVec; only psi is taken from the input.
inline CVec fiducial_psi_from_json(const json& j) {
  if (j.is_object() && j.contains("psi")) return cvec_from_json(j.at("psi"));
  return cvec_from_json(j);
}

inline json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(e.what());
  }
}

/// One line per row: re_0,im_0,re_1,im_1,...
inline std::string to_csv(const Matrix& m) {
  std::ostringstream os;
  os << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) os << ',';
      os << m(r, c).real() << ',' << m(r, c).imag();
    }
    os << '\n';
  }
  return os.str();
}

}  // namespace knomial
