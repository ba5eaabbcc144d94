#include "cyclo/output.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "cyclo/error.hpp"

namespace cyclo {

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

std::FILE* open_out(const std::string& path) {
  const auto dir = std::filesystem::path(path).parent_path();
  if (!dir.empty()) std::filesystem::create_directories(dir);
  std::FILE* f = std::fopen(path.c_str(), "wb");
  if (!f) throw ConfigError("output: cannot write " + path);
  return f;
}

}  // namespace

void write_csv(const std::string& path, const Metadata& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows) {
  std::FILE* f = open_out(path);
  for (const auto& [k, v] : meta) std::fprintf(f, "# %s: %s\n", k.c_str(), v.c_str());
  for (std::size_t i = 0; i < columns.size(); ++i) std::fprintf(f, "%s%s", i ? "," : "", columns[i].c_str());
  std::fputc('\n', f);
  for (const auto& r : rows) {
    for (std::size_t i = 0; i < r.size(); ++i) std::fprintf(f, "%s%.17g", i ? "," : "", r[i]);
    std::fputc('\n', f);
  }
  std::fclose(f);
}

void write_text(const std::string& path, const std::string& text) {
  std::FILE* f = open_out(path);
  std::fwrite(text.data(), 1, text.size(), f);
  std::fclose(f);
}

}  // namespace cyclo
