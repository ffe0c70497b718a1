#include "mzsv/indices.hpp"

#include <charconv>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <utility>

#include "mzsv/types.hpp"

namespace mzsv {

MultiIndex::MultiIndex(std::initializer_list<int> parts) : MultiIndex(std::vector<int>(parts)) {}

MultiIndex::MultiIndex(std::vector<int> parts) : parts_(std::move(parts)) {
  for (int p : parts_)
    if (p < 1) throw DomainError("MultiIndex: parts must be >= 1, got " + std::to_string(p));
}

MultiIndex MultiIndex::parse(std::string_view text) {
  std::vector<int> parts;
  if (text.empty()) return MultiIndex();
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t comma = text.find(',', pos);
    std::string_view item = text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
    int value = 0;
    auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), value);
    if (item.empty() || ec != std::errc() || ptr != item.data() + item.size())
      throw DomainError("MultiIndex: cannot parse '" + std::string(text) + "'");
    parts.push_back(value);
    if (comma == std::string_view::npos) break;
    pos = comma + 1;
  }
  return MultiIndex(std::move(parts));
}

int MultiIndex::weight() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

int MultiIndex::height() const {
  int h = 0;
  for (int p : parts_) h += p > 1 ? 1 : 0;
  return h;
}

int MultiIndex::leading_ones_after_first() const {
  int j = 0;
  for (std::size_t i = 1; i < parts_.size() && parts_[i] == 1; ++i) ++j;
  return j;
}

std::string MultiIndex::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(parts_[i]);
  }
  return out;
}

MultiIndex MultiIndex::suffix(std::size_t from) const {
  if (from >= parts_.size()) return MultiIndex();
  return MultiIndex(std::vector<int>(parts_.begin() + static_cast<std::ptrdiff_t>(from), parts_.end()));
}

Classification classify(const MultiIndex& idx) {
  return {idx.weight(), idx.depth(), idx.height(), idx.admissible()};
}

namespace {

unsigned long long count_all(int k, int s) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, unsigned long long> memo;
  if (k < 0 || s < 0) return 0;
  if (k == 0) return s == 0 ? 1 : 0;
  {
    std::lock_guard lock(mu);
    if (auto it = memo.find({k, s}); it != memo.end()) return it->second;
  }
  unsigned long long total = count_all(k - 1, s);
  for (int p = 2; p <= k; ++p) total += count_all(k - p, s - 1);
  std::lock_guard lock(mu);
  memo[{k, s}] = total;
  return total;
}

void enumerate_into(int k, int s, bool admissible_first, std::vector<int>& prefix, std::vector<MultiIndex>& out) {
  if (k == 0) {
    if (s == 0) out.emplace_back(prefix);
    return;
  }
  if (s < 0 || k < 2 * s) return;  // each part > 1 needs at least 2
  for (int p = admissible_first ? 2 : 1; p <= k; ++p) {
    const int rest_s = p > 1 ? s - 1 : s;
    if (rest_s < 0) break;
    prefix.push_back(p);
    enumerate_into(k - p, rest_s, false, prefix, out);
    prefix.pop_back();
  }
}

}  // namespace

unsigned long long count_indices(int k, int s, bool admissible_only) {
  if (!admissible_only) return count_all(k, s);
  if (k < 2 || s < 1) return 0;
  unsigned long long total = 0;
  for (int p = 2; p <= k; ++p) total += count_all(k - p, s - 1);
  return total;
}

std::vector<MultiIndex> enum_indices(int k, int s, bool admissible_only) {
  std::vector<MultiIndex> out;
  if (k < 0 || s < 0) return out;
  out.reserve(static_cast<std::size_t>(count_indices(k, s, admissible_only)));
  if (admissible_only && k == 0) return out;
  std::vector<int> prefix;
  enumerate_into(k, s, admissible_only, prefix, out);
  return out;
}

std::vector<MultiIndex> star_expand(const MultiIndex& idx) {
  if (idx.empty()) throw DomainError("star_expand: empty index");
  const auto parts = idx.parts();
  const std::size_t commas = parts.size() - 1;
  std::vector<MultiIndex> out;
  out.reserve(std::size_t{1} << commas);
  for (std::size_t mask = 0; mask < (std::size_t{1} << commas); ++mask) {
    std::vector<int> merged{parts[0]};
    for (std::size_t i = 0; i < commas; ++i) {
      if (mask & (std::size_t{1} << i))
        merged.back() += parts[i + 1];
      else
        merged.push_back(parts[i + 1]);
    }
    out.emplace_back(std::move(merged));
  }
  return out;
}

std::vector<SignedIndex> mzv_expand(const MultiIndex& idx) {
  std::vector<SignedIndex> out;
  for (auto& p : star_expand(idx)) {
    const int merges = idx.depth() - p.depth();
    out.push_back({merges % 2 == 0 ? 1 : -1, std::move(p)});
  }
  return out;
}

std::string to_csv(std::span<const MultiIndex> list) {
  std::string out;
  for (const auto& idx : list) {
    out += idx.to_string();
    out += '\n';
  }
  return out;
}

std::string to_json(std::span<const MultiIndex> list) {
  std::string out = "[";
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (i) out += ',';
    out += '[' + list[i].to_string() + ']';
  }
  out += "]";
  return out;
}

}  // namespace mzsv
