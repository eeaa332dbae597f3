#include "lrp/experiment_io.hpp"

#include <algorithm>
#include <cctype>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace lrp {
namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::string item;
  std::istringstream in(value);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

double parse_double(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size() || !std::isfinite(d)) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ParseError("bad numeric value '" + v + "' for " + key);
  }
}

std::uint64_t parse_u64(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const unsigned long long u = std::stoull(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return u;
  } catch (const std::exception&) {
    throw ParseError("bad integer value '" + v + "' for " + key);
  }
}

}  // namespace

std::string scheme_name(SchemeId scheme) {
  switch (scheme) {
    case SchemeId::kZf: return "ZF";
    case SchemeId::kMmse: return "MMSE";
    case SchemeId::kLraZfSa: return "LRA-ZF-SA";
    case SchemeId::kLraZfLll: return "LRA-ZF-LLL";
    case SchemeId::kLraMmseSa: return "LRA-MMSE-SA";
    case SchemeId::kLraMmseLll: return "LRA-MMSE-LLL";
  }
  return "?";
}

SchemeId parse_scheme(const std::string& name) {
  const std::string key = lower(trim(name));
  if (key == "zf") return SchemeId::kZf;
  if (key == "mmse") return SchemeId::kMmse;
  if (key == "lra-zf-sa") return SchemeId::kLraZfSa;
  if (key == "lra-zf-lll") return SchemeId::kLraZfLll;
  if (key == "lra-mmse-sa") return SchemeId::kLraMmseSa;
  if (key == "lra-mmse-lll") return SchemeId::kLraMmseLll;
  throw ParseError("unknown scheme '" + name + "'");
}

std::string reducer_tag_name(ReducerTag tag) {
  switch (tag) {
    case ReducerTag::kNone: return "none";
    case ReducerTag::kSa: return "SA";
    case ReducerTag::kLll: return "LLL";
  }
  return "?";
}

ReducerTag parse_reducer_tag(const std::string& name) {
  const std::string key = lower(trim(name));
  if (key == "none") return ReducerTag::kNone;
  if (key == "sa") return ReducerTag::kSa;
  if (key == "lll") return ReducerTag::kLll;
  throw ParseError("unknown reducer tag '" + name + "'");
}

SimConfig parse_sim_config(std::istream& in) {
  SimConfig cfg;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw ParseError("line " + std::to_string(line_no) + ": expected key=value");
    }
    const std::string key = lower(trim(line.substr(0, eq)));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "n_t") {
      cfg.n_t = static_cast<int>(parse_u64(value, key));
    } else if (key == "n_r") {
      cfg.n_r = static_cast<int>(parse_u64(value, key));
    } else if (key == "snr_grid_db") {
      cfg.snr_grid_db.clear();
      for (const auto& item : split_list(value)) {
        cfg.snr_grid_db.push_back(parse_double(item, key));
      }
    } else if (key == "schemes") {
      cfg.schemes.clear();
      for (const auto& item : split_list(value)) cfg.schemes.push_back(parse_scheme(item));
    } else if (key == "n_channels") {
      cfg.n_channels = parse_u64(value, key);
    } else if (key == "frames_per_channel") {
      cfg.frames_per_channel = parse_u64(value, key);
    } else if (key == "min_errors") {
      cfg.min_errors = parse_u64(value, key);
    } else if (key == "min_channels") {
      cfg.min_channels = parse_u64(value, key);
    } else if (key == "seed") {
      cfg.seed = parse_u64(value, key);
    } else if (key == "sigma_mode") {
      const std::string mode = lower(value);
      if (mode == "tx-power") {
        cfg.sigma_mode = SigmaMode::kTxPower;
      } else if (mode == "per-bit") {
        cfg.sigma_mode = SigmaMode::kPerBit;
      } else {
        throw ParseError("sigma_mode must be tx-power or per-bit, got '" + value + "'");
      }
    } else if (key == "lll_delta") {
      cfg.lovasz_delta = parse_double(value, key);
      if (!(cfg.lovasz_delta > 0.25 && cfg.lovasz_delta <= 1.0)) {
        throw ParseError("lll_delta must lie in (0.25, 1]");
      }
    } else if (key == "max_reduction_iters") {
      cfg.max_reduction_iters = parse_u64(value, key);
    } else if (key == "threads") {
      cfg.threads = static_cast<unsigned>(parse_u64(value, key));
    } else {
      throw ParseError("unknown config key '" + key + "'");
    }
  }
  if (cfg.n_t < 1 || cfg.n_t != cfg.n_r) {
    throw ParseError("config requires n_t = n_r >= 1");
  }
  if (cfg.n_channels < 1 || cfg.frames_per_channel < 1) {
    throw ParseError("n_channels and frames_per_channel must be >= 1");
  }
  return cfg;
}

SimConfig load_sim_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config file: " + path);
  return parse_sim_config(in);
}

void write_ber_csv(const std::string& path, const std::vector<BerPoint>& points) {
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << "scheme,snr_db,bits,errors,ber,ci95\n";
  char buf[160];
  for (const BerPoint& p : points) {
    std::snprintf(buf, sizeof(buf), "%s,%.10g,%" PRIu64 ",%" PRIu64 ",%.10g,%.10g\n",
                  scheme_name(p.scheme).c_str(), p.snr_db, p.bits_sent, p.bit_errors,
                  p.ber, p.ci95_halfwidth);
    out << buf;
  }
  if (!out) throw ParseError("write failed: " + path);
}

std::vector<BerPoint> read_ber_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open ber csv: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "scheme,snr_db,bits,errors,ber,ci95") {
    throw ParseError("bad ber csv header in " + path);
  }
  std::vector<BerPoint> points;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_list(line);
    if (cells.size() != 6) throw ParseError("bad ber csv row: " + line);
    BerPoint p;
    p.scheme = parse_scheme(cells[0]);
    p.snr_db = parse_double(cells[1], "snr_db");
    p.bits_sent = parse_u64(cells[2], "bits");
    p.bit_errors = parse_u64(cells[3], "errors");
    p.ber = parse_double(cells[4], "ber");
    p.ci95_halfwidth = parse_double(cells[5], "ci95");
    points.push_back(p);
  }
  return points;
}

void write_cdf_csv(const std::string& path, const std::vector<CdfPoint>& points) {
  std::vector<CdfPoint> sorted = points;
  std::stable_sort(sorted.begin(), sorted.end(), [](const CdfPoint& a, const CdfPoint& b) {
    const std::string an = reducer_tag_name(a.reducer), bn = reducer_tag_name(b.reducer);
    return an != bn ? an < bn : a.kappa < b.kappa;
  });
  std::ofstream out(path);
  if (!out) throw ParseError("cannot open output file: " + path);
  out << "reducer,kappa,cdf\n";
  char buf[96];
  for (const CdfPoint& p : sorted) {
    std::snprintf(buf, sizeof(buf), "%s,%.10g,%.10g\n", reducer_tag_name(p.reducer).c_str(),
                  p.kappa, p.cdf);
    out << buf;
  }
  if (!out) throw ParseError("write failed: " + path);
}

std::vector<CdfPoint> read_cdf_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open cdf csv: " + path);
  std::string line;
  if (!std::getline(in, line) || trim(line) != "reducer,kappa,cdf") {
    throw ParseError("bad cdf csv header in " + path);
  }
  std::vector<CdfPoint> points;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_list(line);
    if (cells.size() != 3) throw ParseError("bad cdf csv row: " + line);
    CdfPoint p;
    p.reducer = parse_reducer_tag(cells[0]);
    p.kappa = parse_double(cells[1], "kappa");
    p.cdf = parse_double(cells[2], "cdf");
    points.push_back(p);
  }
  return points;
}

}  // namespace lrp
