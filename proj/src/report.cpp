#include "pstddm/report.hpp"

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <type_traits>

namespace pstddm {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

template <typename T>
std::string opt(const std::optional<T>& v) {
  if (!v) return "";
  if constexpr (std::is_same_v<T, double>) {
    return fmt(*v);
  } else {
    return std::to_string(*v);
  }
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      out.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur += ch;
    }
  }
  out.push_back(cur);
  return out;
}

double to_double(const std::string& s) {
  std::size_t pos = 0;
  const double v = std::stod(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("csv: bad number '" + s + "'");
  return v;
}

int to_int(const std::string& s) {
  std::size_t pos = 0;
  const int v = std::stoi(s, &pos);
  if (pos != s.size()) throw std::invalid_argument("csv: bad integer '" + s + "'");
  return v;
}

std::optional<double> opt_double(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return to_double(s);
}

std::optional<int> opt_int(const std::string& s) {
  if (s.empty()) return std::nullopt;
  return to_int(s);
}

}  // namespace

std::string csv_header() { return "mode,k,q,N,N1,gamma0,e_i,e_f,e_s,iters_plain,iters_precond,wall_ms"; }

std::string csv_row(const ExperimentRecord& r) {
  std::ostringstream os;
  os << r.mode << ',' << fmt(r.k) << ',' << fmt(r.q) << ',' << opt(r.N) << ',' << opt(r.N1) << ','
     << fmt(r.gamma0) << ',' << opt(r.e_i) << ',' << opt(r.e_f) << ',' << opt(r.e_s) << ',' << opt(r.iters_plain)
     << ',' << opt(r.iters_precond) << ',' << fmt(r.wall_ms);
  return os.str();
}

std::string write_csv(const std::vector<ExperimentRecord>& rows) {
  std::string s = csv_header() + "\n";
  for (const auto& r : rows) s += csv_row(r) + "\n";
  return s;
}

std::vector<ExperimentRecord> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || split(line) != split(csv_header())) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<ExperimentRecord> rows;
  while (std::getline(in, line)) {
    if (line.empty() || line == "\r") continue;
    const auto f = split(line);
    if (f.size() != 12) throw std::invalid_argument("csv: expected 12 fields");
    ExperimentRecord r;
    r.mode = f[0];
    r.k = to_double(f[1]);
    r.q = to_double(f[2]);
    r.N = opt_int(f[3]);
    r.N1 = opt_int(f[4]);
    r.gamma0 = to_double(f[5]);
    r.e_i = opt_double(f[6]);
    r.e_f = opt_double(f[7]);
    r.e_s = opt_double(f[8]);
    r.iters_plain = opt_int(f[9]);
    r.iters_precond = opt_int(f[10]);
    r.wall_ms = to_double(f[11]);
    rows.push_back(r);
  }
  return rows;
}

std::string residuals_csv(const ExperimentOutput& out) {
  std::string s = "iteration,residual,preconditioned_flag\n";
  const auto emit = [&s](const std::vector<double>& h, int flag) {
    for (std::size_t i = 0; i < h.size(); ++i) s += std::to_string(i) + ',' + fmt(h[i]) + ',' + std::to_string(flag) + '\n';
  };
  emit(out.residuals_plain, 0);
  emit(out.residuals_precond, 1);
  return s;
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream o(path);
  if (!o) throw std::runtime_error("cannot write '" + path + "'");
  o << text;
}

}  // namespace pstddm
