// Copyright 2026 The tenantconf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef TENANTCONF_CACHE_HPP
#define TENANTCONF_CACHE_HPP

#include <cstdint>
#include <future>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <utility>

#include "tenantconf/model.hpp"

namespace tenantconf {

struct CacheStats {
  std::uint64_t hits = 0;
  std::uint64_t misses = 0;
  std::uint64_t invalidations = 0;
  std::uint64_t entries = 0;
  bool operator==(const CacheStats&) const = default;
};

/// Bounded LRU map whose misses are filled by a caller-supplied loader.
/// Concurrent misses on one key share a single loader invocation; loader
/// failures propagate to every waiter and are not cached.
template <typename Key, typename Value>
class SingleFlightCache {
 public:
  using Ptr = std::shared_ptr<const Value>;

  explicit SingleFlightCache(std::size_t capacity) : capacity_(capacity == 0 ? 1 : capacity) {}

  SingleFlightCache(const SingleFlightCache&) = delete;
  SingleFlightCache& operator=(const SingleFlightCache&) = delete;

  /// `loader` returns Ptr (or something convertible) and may throw.
  template <typename Loader>
  Ptr get_or_load(const Key& key, Loader&& loader) {
    std::unique_lock lock(mu_);
    if (auto it = entries_.find(key); it != entries_.end()) {
      lru_.splice(lru_.begin(), lru_, it->second.position);
      ++stats_.hits;
      return it->second.value;
    }
    if (auto it = inflight_.find(key); it != inflight_.end()) {
      auto pending = it->second.result;
      ++stats_.hits;
      lock.unlock();
      return pending.get();
    }
    ++stats_.misses;
    std::promise<Ptr> promise;
    auto& flight = inflight_[key];
    flight.result = promise.get_future().share();
    const std::uint64_t ticket = ++next_ticket_;
    flight.ticket = ticket;
    lock.unlock();

    Ptr value;
    try {
      value = Ptr(loader());
    } catch (...) {
      lock.lock();
      finish_flight(key, ticket);
      lock.unlock();
      promise.set_exception(std::current_exception());
      throw;
    }

    lock.lock();
    if (finish_flight(key, ticket)) insert(key, value);
    lock.unlock();
    promise.set_value(value);
    return value;
  }

  /// Drops every entry whose key satisfies `pred`, and keeps in-flight loads
  /// for such keys from being inserted. Counts one invalidation per call.
  template <typename Pred>
  void invalidate_if(Pred pred) {
    std::lock_guard lock(mu_);
    ++stats_.invalidations;
    for (auto it = entries_.begin(); it != entries_.end();) {
      if (pred(it->first)) {
        lru_.erase(it->second.position);
        it = entries_.erase(it);
      } else {
        ++it;
      }
    }
    for (auto& [key, flight] : inflight_) {
      if (pred(key)) flight.doomed = true;
    }
  }

  CacheStats stats() const {
    std::lock_guard lock(mu_);
    CacheStats out = stats_;
    out.entries = entries_.size();
    return out;
  }

  std::size_t capacity() const noexcept { return capacity_; }

 private:
  struct Entry {
    Ptr value;
    typename std::list<Key>::iterator position;
  };
  struct Flight {
    std::shared_future<Ptr> result;
    std::uint64_t ticket = 0;
    bool doomed = false;
  };

  // Returns whether the finished load may be cached.
  bool finish_flight(const Key& key, std::uint64_t ticket) {
    auto it = inflight_.find(key);
    if (it == inflight_.end() || it->second.ticket != ticket) return false;
    bool keep = !it->second.doomed;
    inflight_.erase(it);
    return keep;
  }

  void insert(const Key& key, Ptr value) {
    lru_.push_front(key);
    entries_[key] = Entry{std::move(value), lru_.begin()};
    while (entries_.size() > capacity_) {
      entries_.erase(lru_.back());
      lru_.pop_back();
    }
  }

  const std::size_t capacity_;
  mutable std::mutex mu_;
  std::list<Key> lru_;
  std::map<Key, Entry> entries_;
  std::map<Key, Flight> inflight_;
  std::uint64_t next_ticket_ = 0;
  CacheStats stats_;
};

/// Parsed documents keyed by owner, document and stored version.
struct CacheKey {
  TenantId tenant;
  DocKey doc;
  std::uint64_t version = 0;
  auto operator<=>(const CacheKey&) const = default;
};

class DocumentCache {
 public:
  static constexpr std::size_t kDefaultCapacity = 1024;

  explicit DocumentCache(std::size_t capacity = kDefaultCapacity) : cache_(capacity) {}

  /// Returns the cached document for exactly (tenant, doc, version), or runs
  /// `loader` once and caches its result.
  template <typename Loader>
  std::shared_ptr<const ConfigDocument> get_or_load(const TenantId& tenant, const DocKey& doc,
                                                    std::uint64_t version, Loader&& loader) {
    return cache_.get_or_load(CacheKey{tenant, doc, version}, std::forward<Loader>(loader));
  }

  /// Drops every version cached for (tenant, doc). Other owners' entries are
  /// untouched.
  void invalidate(const TenantId& tenant, const DocKey& doc) {
    cache_.invalidate_if(
        [&](const CacheKey& k) { return k.tenant == tenant && k.doc == doc; });
  }

  CacheStats stats() const { return cache_.stats(); }

 private:
  SingleFlightCache<CacheKey, ConfigDocument> cache_;
};

}  // namespace tenantconf

#endif  // TENANTCONF_CACHE_HPP
