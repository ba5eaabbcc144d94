#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace cyclo {

inline constexpr const char* kCodeVersion = "0.1.0";

// 64-bit FNV-1a
std::uint64_t fnv1a(const std::string& bytes);
std::string hex64(std::uint64_t h);

using Metadata = std::vector<std::pair<std::string, std::string>>;

// "# key: value" lines, then the header row, then rows in %.17g.
void write_csv(const std::string& path, const Metadata& meta, const std::vector<std::string>& columns,
               const std::vector<std::vector<double>>& rows);

void write_text(const std::string& path, const std::string& text);

}  // namespace cyclo
