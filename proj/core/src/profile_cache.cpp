#include "barw/profile_cache.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <string_view>

#include "barw/csv.hpp"
#include "barw/errors.hpp"

namespace barw {

namespace {

struct Header {
  int version = 0;
  double lambda = 0.0;
  int n = 0;
  int u = 0;
  double residual = 0.0;
};

double parse_real(std::string_view text, const std::string& where) {
  // strtod rather than from_chars: GCC 11 lacks floating from_chars in some
  // configurations.
  const std::string buf(text);
  char* end = nullptr;
  const double v = std::strtod(buf.c_str(), &end);
  if (buf.empty() || end != buf.c_str() + buf.size())
    throw CacheError(where + ": bad real '" + buf + "'");
  return v;
}

int parse_int(std::string_view text, const std::string& where) {
  int v = 0;
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), last, v);
  if (ec != std::errc{} || ptr != last || text.empty())
    throw CacheError(where + ": bad integer '" + std::string(text) + "'");
  return v;
}

std::string_view expect_field(std::istream& in, std::string_view key, const std::string& name) {
  static thread_local std::string line;
  if (!std::getline(in, line)) throw CacheError(name + ": truncated header, missing " + std::string(key));
  std::string_view view(line);
  if (!view.starts_with(key) || view.size() <= key.size() || view[key.size()] != '=')
    throw CacheError(name + ": expected '" + std::string(key) + "=' header line");
  return view.substr(key.size() + 1);
}

Header read_header(std::istream& in, const std::string& name) {
  Header h;
  h.version = parse_int(expect_field(in, "version", name), name);
  h.lambda = parse_real(expect_field(in, "lambda", name), name);
  h.n = parse_int(expect_field(in, "n", name), name);
  h.u = parse_int(expect_field(in, "u", name), name);
  h.residual = parse_real(expect_field(in, "residual", name), name);
  return h;
}

HittingProfile read_body(std::istream& in, const Header& h, const std::string& name) {
  if (h.u < 1 || h.n < 1 || h.u > h.n) throw CacheError(name + ": inconsistent n/u in header");
  HittingProfile profile{ModelParams(h.lambda, h.n), h.u, {}, h.residual,
                         SolveMethod::dense_logdomain};
  std::string line;
  for (int x = 0; x < h.u; ++x) {
    const std::string where = name + ": row " + std::to_string(x);
    if (!std::getline(in, line)) throw CacheError(where + " missing");
    const auto tab = line.find('\t');
    if (tab == std::string::npos) throw CacheError(where + ": expected 'x<TAB>log_phi'");
    if (parse_int(std::string_view(line).substr(0, tab), where) != x)
      throw CacheError(where + ": state index out of order");
    profile.log_phi.push_back(
        LogValue::from_log(parse_real(std::string_view(line).substr(tab + 1), where)));
  }
  while (std::getline(in, line))
    if (!line.empty()) throw CacheError(name + ": trailing content after last row");
  return profile;
}

}  // namespace

void write_profile(std::ostream& out, const HittingProfile& profile) {
  out << "version=" << kCacheVersion << '\n'
      << "lambda=" << format_real(profile.params.lambda()) << '\n'
      << "n=" << profile.params.n() << '\n'
      << "u=" << profile.u << '\n'
      << "residual=" << format_real(profile.residual) << '\n';
  for (int x = 0; x < profile.u; ++x) out << x << '\t' << format_real(profile.log(x)) << '\n';
}

HittingProfile read_profile(std::istream& in, const std::string& source_name) {
  const Header h = read_header(in, source_name);
  try {
    return read_body(in, h, source_name);
  } catch (const DomainError& e) {
    throw CacheError(source_name + ": " + e.what());
  }
}

std::filesystem::path cache_file(const std::filesystem::path& dir, double lambda, int n, int u) {
  return dir / ("phi_lambda" + format_real(lambda) + "_n" + std::to_string(n) + "_u" +
                std::to_string(u) + ".tsv");
}

void cache_store(const std::filesystem::path& dir, const HittingProfile& profile) {
  std::filesystem::create_directories(dir);
  const auto path = cache_file(dir, profile.params.lambda(), profile.params.n(), profile.u);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CacheError("cannot write cache file '" + path.string() + "'");
  write_profile(out, profile);
}

CacheProbe cache_probe(const std::filesystem::path& dir, double lambda, int n, int u) {
  CacheProbe probe;
  probe.file = cache_file(dir, lambda, n, u);
  std::ifstream in(probe.file, std::ios::binary);
  if (!in) {
    probe.status = CacheStatus::miss;
    probe.reason = "no cache file";
    return probe;
  }
  const std::string name = probe.file.string();
  const Header h = read_header(in, name);
  probe.status = CacheStatus::mismatch;
  if (h.version != kCacheVersion) {
    probe.reason = "version " + std::to_string(h.version);
  } else if (h.lambda != lambda || h.n != n || h.u != u) {
    probe.reason = "header parameters differ from the cache key";
  } else if (!(h.residual <= kHarmonicityTolerance)) {
    probe.reason = "recorded residual " + format_real(h.residual) + " above tolerance";
  } else {
    try {
      probe.profile = read_body(in, h, name);
    } catch (const DomainError& e) {
      throw CacheError(name + ": " + e.what());
    }
    probe.status = CacheStatus::hit;
  }
  return probe;
}

std::optional<HittingProfile> cache_lookup(const std::filesystem::path& dir, double lambda, int n,
                                           int u) {
  auto probe = cache_probe(dir, lambda, n, u);
  if (probe.status != CacheStatus::hit) return std::nullopt;
  return std::move(probe.profile);
}

}  // namespace barw
