#include "dmulti/cache.h"

#include <mutex>

namespace dmulti {

Cache::Cache(const Cache& other) {
  std::shared_lock lock(other.mutex_);
  entries_ = other.entries_;
}

Cache& Cache::operator=(const Cache& other) {
  if (this == &other) return *this;
  std::scoped_lock lock(mutex_);
  std::shared_lock other_lock(other.mutex_);
  entries_ = other.entries_;
  return *this;
}

std::optional<Evaluation> Cache::Probe(std::span<const double> x) const {
  std::shared_lock lock(mutex_);
  auto it = entries_.find(Vector(x.begin(), x.end()));
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

bool Cache::Contains(std::span<const double> x) const {
  std::shared_lock lock(mutex_);
  return entries_.count(Vector(x.begin(), x.end())) > 0;
}

bool Cache::Insert(const Evaluation& e) {
  std::scoped_lock lock(mutex_);
  return entries_.emplace(e.x, e).second;
}

std::size_t Cache::size() const {
  std::shared_lock lock(mutex_);
  return entries_.size();
}

std::vector<Evaluation> Cache::Entries() const {
  std::shared_lock lock(mutex_);
  std::vector<Evaluation> out;
  out.reserve(entries_.size());
  for (const auto& [x, e] : entries_) out.push_back(e);
  return out;
}

}  // namespace dmulti
