#include "support.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <thread>

namespace bochner::tool {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent + 2), ' ');
  const std::string close(static_cast<std::size_t>(indent), ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        render(it.value(), indent + 2, out);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      const bool scalars = std::all_of(j.begin(), j.end(), [](const Json& v) { return v.is_primitive(); });
      if (scalars) {
        out += "[";
        bool first = true;
        for (const auto& v : j) {
          if (!first) out += ", ";
          first = false;
          render(v, indent + 2, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      bool first = true;
      for (const auto& v : j) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        render(v, indent + 2, out);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double x = j.get<double>();
      out += std::isfinite(x) ? format_double(x) : "null";
      return;
    }
    default:
      out += j.dump();
  }
}

}  // namespace

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_ + 0x632be59bd9b4e019ULL));
  return splitmix64(key + counter_++ * 0x9e3779b97f4a7c15ULL);
}

double CounterRng::uniform(double lo, double hi) {
  const double u = static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  return lo + (hi - lo) * u;
}

int CounterRng::uniform_int(int lo, int hi) {
  const auto span = static_cast<std::uint64_t>(hi - lo + 1);
  return lo + static_cast<int>(next_u64() % span);
}

Form CounterRng::form(int q, int p) {
  std::vector<double> c(static_cast<std::size_t>(binomial(q, p)));
  for (auto& x : c) x = uniform(-1.0, 1.0);
  return Form(q, p, std::move(c));
}

Eigen::MatrixXd CounterRng::symmetric(int n) {
  Eigen::MatrixXd a(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r; s < n; ++s) a(r, s) = a(s, r) = uniform(-1.0, 1.0);
  return a;
}

Eigen::MatrixXd CounterRng::skew(int n) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int r = 0; r < n; ++r)
    for (int s = r + 1; s < n; ++s) {
      a(r, s) = uniform(-1.0, 1.0);
      a(s, r) = -a(r, s);
    }
  return a;
}

std::vector<double> CounterRng::blocks(int m, double lo, double hi) {
  std::vector<double> b(static_cast<std::size_t>(m));
  for (auto& x : b) x = uniform(lo, hi);
  std::sort(b.begin(), b.end());
  return b;
}

int worker_count() {
  if (const char* env = std::getenv("BOCHNER_FLOW_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::string format_double(double x) {
  if (!std::isfinite(x)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string render_json(const Json& j) {
  std::string out;
  render(j, 0, out);
  out += "\n";
  return out;
}

}  // namespace bochner::tool
