#pragma once

// Command-line front end. Verbs map one-to-one onto library operations:
// classify, certify, survey, series, decompose, verify. Exit codes:
// 0 success, 1 domain error (e.g. a demanded certificate does not exist
// or fails verification), 2 usage error.

#include <atomic>
#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ufl/egyptian_analyzer.hpp"
#include "ufl/rational_egyptian.hpp"
#include "ufl/ring_expr.hpp"
#include "ufl/series_lab.hpp"

namespace ufl::cli {

using json = nlohmann::ordered_json;

// --w accepts the keywords "units" and "regulars" or an explicit
// generator list like "1,5" or "[1,5]". Keywords resolve after the ring
// is built; regular elements are the default denominators.
inline MultSet resolve_multset(const FiniteRing& r, const std::string& spec) {
  if (spec == "units") return mult_closure(r, element_classes(r).units.to_list());
  if (spec == "regulars") return mult_closure(r, element_classes(r).regulars.to_list());
  std::string body = spec;
  if (!body.empty() && body.front() == '[' && body.back() == ']')
    body = body.substr(1, body.size() - 2);
  std::vector<int> gens;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    size_t idx = 0;
    const int v = std::stoi(item, &idx);
    while (idx < item.size() && std::isspace(static_cast<unsigned char>(item[idx]))) ++idx;
    if (idx != item.size()) throw std::invalid_argument("bad -w generator '" + item + "'");
    gens.push_back(v);
  }
  if (gens.empty()) throw std::invalid_argument("empty --w generator list");
  return mult_closure(r, gens);
}

inline json certificate_json(const std::string& ring_expr, const std::vector<int>& w_generators,
                             const Certificate& cert) {
  json j;
  j["ring"] = ring_expr;
  j["w_generators"] = w_generators;
  j["target"] = cert.target;
  j["denominators"] = cert.denominators;
  j["strict"] = cert.strict;
  return j;
}

inline json report_json(const ClassificationReport& rep) {
  json j;
  j["ring"] = rep.ring_expr;
  j["w_generators"] = rep.w_generators;
  j["degenerate"] = rep.degenerate;
  j["egyptian"] = rep.ring_egyptian;
  j["strictly_egyptian"] = rep.ring_strictly_egyptian;
  json elems = json::array();
  for (size_t x = 0; x < rep.status.size(); ++x) {
    json e;
    e["index"] = x;
    e["status"] = to_string(rep.status[x]);
    e["killed_by_localization"] = static_cast<bool>(rep.killed[x]);
    e["min_len"] = rep.min_len[x];
    e["min_strict_len"] = rep.min_strict_len[x];
    elems.push_back(std::move(e));
  }
  j["elements"] = std::move(elems);
  return j;
}

inline const char* kSurveyCsvHeader = "n,w_size,egyptian,strictly_egyptian,max_min_cert_len";

inline std::string csv_row(int n, int w_size, const ClassificationReport& rep) {
  std::string row = std::to_string(n) + "," + std::to_string(w_size) + ",";
  row += rep.ring_egyptian ? "true" : "false";
  row += ",";
  row += rep.ring_strictly_egyptian ? "true" : "false";
  row += "," + std::to_string(rep.max_min_cert_len());
  return row;
}

namespace detail {

inline Rational parse_rational(const std::string& text) {
  const size_t slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(text));
    const BigInt num(text.substr(0, slash));
    const BigInt den(text.substr(slash + 1));
    if (den <= 0) throw std::invalid_argument("denominator must be positive");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("cannot parse rational '" + text + "'");
  }
}

// "Zn(5);k=4;f=1,0,2,0" -> (ring expr, k, coefficients). Short coefficient
// lists are zero-padded to length k.
struct SeriesInput {
  std::string ring_expr;
  int k = 0;
  std::vector<int> coeffs;
};

inline SeriesInput parse_series_input(const std::string& text) {
  SeriesInput si;
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ';')) parts.push_back(part);
  if (parts.size() != 3 || parts[1].rfind("k=", 0) != 0 || parts[2].rfind("f=", 0) != 0)
    throw std::invalid_argument("series input must look like 'Zn(5);k=4;f=1,0,2,0'");
  si.ring_expr = parts[0];
  si.k = std::stoi(parts[1].substr(2));
  if (si.k < 1) throw std::invalid_argument("series truncation order must be positive");
  std::stringstream cs(parts[2].substr(2));
  std::string c;
  while (std::getline(cs, c, ',')) si.coeffs.push_back(std::stoi(c));
  if (static_cast<int>(si.coeffs.size()) > si.k)
    throw std::invalid_argument("more coefficients than the truncation order");
  si.coeffs.resize(static_cast<size_t>(si.k), 0);
  return si;
}

inline std::string bigint_array_json(const std::vector<BigInt>& xs) {
  std::string s = "[";
  for (size_t i = 0; i < xs.size(); ++i) {
    if (i) s += ",";
    s += xs[i].str();
  }
  s += "]";
  return s;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"unit-fraction-lab: unit-fraction certificates over finite rings and the rationals"};
  app.require_subcommand(1);

  std::string ring_expr, wspec = "regulars", format = "json";
  int elem = 0;
  bool strict = false;
  int jobs = 1;
  std::string n_range;
  std::string cert_path;
  std::string series_input;
  std::string fraction;
  bool greedy = false;
  int terms = 0;
  std::string max_den = "1000000000000";

  CLI::App* classify = app.add_subcommand("classify", "Classify a ring's elements");
  classify->add_option("--ring", ring_expr, "ring expression, e.g. Zn(6)")->required();
  classify->add_option("--w", wspec, "units | regulars | generator list");
  classify->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  CLI::App* certify = app.add_subcommand("certify", "Emit a minimal certificate for an element");
  certify->add_option("--ring", ring_expr, "ring expression")->required();
  certify->add_option("--w", wspec, "units | regulars | generator list");
  certify->add_option("--elem", elem, "element index")->required();
  certify->add_flag("--strict", strict, "demand pairwise distinct denominators");

  CLI::App* survey = app.add_subcommand("survey", "Sweep Zn over a range of moduli");
  survey->add_option("--n-range", n_range, "range a..b of moduli")->required();
  survey->add_option("--w", wspec, "units | regulars");
  survey->add_option("--format", format, "csv | json")->check(CLI::IsMember({"json", "csv"}));
  survey->add_option("--jobs", jobs, "worker threads")->check(CLI::PositiveNumber);

  CLI::App* series = app.add_subcommand("series", "Two-denominator series decomposition");
  series->add_option("input", series_input, "e.g. 'Zn(5);k=4;f=1,0,2,0'")->required();

  CLI::App* decompose = app.add_subcommand("decompose", "Egyptian fraction decomposition over Q");
  decompose->add_option("fraction", fraction, "positive rational p/q")->required();
  CLI::Option* greedy_flag = decompose->add_flag("--greedy", greedy, "greedy expansion (default)");
  decompose->add_option("--terms", terms, "search for exactly this many distinct terms")
      ->excludes(greedy_flag);
  decompose->add_option("--max-den", max_den, "denominator bound for --terms");

  CLI::App* verify = app.add_subcommand("verify", "Check a certificate JSON file");
  verify->add_option("--cert", cert_path, "path to certificate JSON, or - for stdin")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (classify->parsed()) {
      const FiniteRing r = parse_ring_expr(ring_expr);
      const MultSet w = resolve_multset(r, wspec);
      const ClassificationReport rep = classify_ring(r, w);
      if (format == "csv") {
        out << kSurveyCsvHeader << "\n" << csv_row(r.order(), w.members.count(), rep) << "\n";
      } else {
        out << report_json(rep).dump(2) << "\n";
      }
      return 0;
    }
    if (certify->parsed()) {
      const FiniteRing r = parse_ring_expr(ring_expr);
      const MultSet w = resolve_multset(r, wspec);
      if (!r.valid_element(elem)) throw std::invalid_argument("--elem is out of range");
      const Certificate cert = minimal_certificate(r, w, elem, strict);
      out << certificate_json(r.origin().expr, w.generators, cert).dump(2) << "\n";
      return 0;
    }
    if (survey->parsed()) {
      if (wspec != "units" && wspec != "regulars")
        throw std::invalid_argument("survey supports only --w units or --w regulars");
      const size_t dots = n_range.find("..");
      if (dots == std::string::npos) throw std::invalid_argument("--n-range must look like 2..50");
      const int lo = std::stoi(n_range.substr(0, dots));
      const int hi = std::stoi(n_range.substr(dots + 2));
      if (lo < 1 || hi < lo) throw std::invalid_argument("bad --n-range bounds");
      const int count = hi - lo + 1;
      std::vector<ClassificationReport> reports(static_cast<size_t>(count));
      std::vector<int> w_sizes(static_cast<size_t>(count), 0);
      std::atomic<int> cursor{0};
      auto worker = [&]() {
        for (int i = cursor.fetch_add(1); i < count; i = cursor.fetch_add(1)) {
          const FiniteRing r = make_zn(lo + i);
          const MultSet w = resolve_multset(r, wspec);
          w_sizes[static_cast<size_t>(i)] = w.members.count();
          reports[static_cast<size_t>(i)] = classify_ring(r, w);
        }
      };
      const int nthreads = std::max(1, std::min(jobs, count));
      std::vector<std::thread> pool;
      for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
      worker();
      for (auto& t : pool) t.join();
      if (format == "json") {
        json rows = json::array();
        for (int i = 0; i < count; ++i) {
          json row;
          row["n"] = lo + i;
          row["w_size"] = w_sizes[static_cast<size_t>(i)];
          row["egyptian"] = reports[static_cast<size_t>(i)].ring_egyptian;
          row["strictly_egyptian"] = reports[static_cast<size_t>(i)].ring_strictly_egyptian;
          row["max_min_cert_len"] = reports[static_cast<size_t>(i)].max_min_cert_len();
          rows.push_back(std::move(row));
        }
        out << rows.dump(2) << "\n";
      } else {
        out << kSurveyCsvHeader << "\n";
        for (int i = 0; i < count; ++i)
          out << csv_row(lo + i, w_sizes[static_cast<size_t>(i)], reports[static_cast<size_t>(i)])
              << "\n";
      }
      return 0;
    }
    if (series->parsed()) {
      const detail::SeriesInput si = detail::parse_series_input(series_input);
      const SeriesRing sr(parse_ring_expr(si.ring_expr), si.k);
      const SeriesJacobsonCert cert = series_jacobson_cert(sr, si.coeffs);
      json j;
      j["ring"] = sr.coeff().origin().expr;
      j["k"] = si.k;
      j["f"] = si.coeffs;
      j["d1"] = cert.d1;
      j["d2"] = cert.d2;
      j["used_x2_fallback"] = cert.used_x2_fallback;
      j["distinct"] = cert.distinct;
      j["identity_ok"] = cert.identity_ok;
      out << j.dump(2) << "\n";
      return cert.identity_ok ? 0 : 1;
    }
    if (decompose->parsed()) {
      const Rational q = detail::parse_rational(fraction);
      if (terms > 0) {
        const BigInt bound(max_den);
        const auto found = bounded_term_search(q, terms, bound);
        if (!found) {
          out << "null\n";
          err << "no " << terms << "-term representation with denominators <= " << bound << "\n";
          return 1;
        }
        out << detail::bigint_array_json(found->denominators) << "\n";
        return 0;
      }
      (void)greedy;  // greedy is the default; the flag is accepted for explicitness
      const UnitFractionList l = greedy_decompose(q);
      out << detail::bigint_array_json(l.denominators) << "\n";
      return 0;
    }
    if (verify->parsed()) {
      json j;
      if (cert_path == "-") {
        j = json::parse(std::cin);
      } else {
        std::ifstream in(cert_path);
        if (!in) throw std::invalid_argument("cannot open certificate file " + cert_path);
        j = json::parse(in);
      }
      const FiniteRing r = parse_ring_expr(j.at("ring").get<std::string>());
      const MultSet w = mult_closure(r, j.at("w_generators").get<std::vector<int>>());
      Certificate cert;
      cert.target = j.at("target").get<int>();
      cert.denominators = j.at("denominators").get<std::vector<int>>();
      cert.strict = j.at("strict").get<bool>();
      const CertificateCheck check = verify_certificate(r, w, cert);
      json res;
      res["ok"] = check.ok();
      res["denominators_ok"] = check.denominators_ok;
      res["model_sum_ok"] = check.model_sum_ok;
      res["loc_eq_ok"] = check.loc_eq_ok;
      res["strict_flag_ok"] = check.strict_flag_ok;
      res["detail"] = check.detail;
      out << res.dump(2) << "\n";
      return check.ok() ? 0 : 1;
    }
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}

}  // namespace ufl::cli
