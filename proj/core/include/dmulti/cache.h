#ifndef DMULTI_CACHE_H_
#define DMULTI_CACHE_H_

#include <map>
#include <optional>
#include <shared_mutex>
#include <span>
#include <vector>

#include "dmulti/core.h"

namespace dmulti {

// Set of evaluated points keyed by exact coordinate equality. Reads may run
// concurrently; inserts take an exclusive lock.
class Cache {
 public:
  Cache() = default;
  Cache(const Cache& other);
  Cache& operator=(const Cache& other);

  std::optional<Evaluation> Probe(std::span<const double> x) const;
  bool Contains(std::span<const double> x) const;

  // Returns false when x is already present; the stored record is kept.
  bool Insert(const Evaluation& e);

  std::size_t size() const;
  std::vector<Evaluation> Entries() const;

 private:
  mutable std::shared_mutex mutex_;
  std::map<Vector, Evaluation> entries_;
};

}  // namespace dmulti

#endif  // DMULTI_CACHE_H_
