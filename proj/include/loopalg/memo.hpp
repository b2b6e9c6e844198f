#ifndef LOOPALG_MEMO_HPP
#define LOOPALG_MEMO_HPP

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <mutex>

namespace loopalg {

// Once-per-key lazy cache. The first caller for a key runs the builder;
// concurrent callers for the same key block on the same future, so no
// torn or duplicated entries are observable. Builders may recurse into
// the cache for different keys.
template <class K, class V>
class MemoCache {
public:
    using Ptr = std::shared_ptr<const V>;

    Ptr get(const K& key, const std::function<V()>& build) {
        std::promise<Ptr> promise;
        std::shared_future<Ptr> fut;
        bool builder = false;
        {
            std::lock_guard<std::mutex> lock(mu_);
            auto it = entries_.find(key);
            if (it != entries_.end()) {
                fut = it->second;
            } else {
                fut = promise.get_future().share();
                entries_.emplace(key, fut);
                builder = true;
            }
        }
        if (builder) {
            try {
                promise.set_value(std::make_shared<const V>(build()));
            } catch (...) {
                promise.set_exception(std::current_exception());
                {
                    // Do not cache failures.
                    std::lock_guard<std::mutex> lock(mu_);
                    entries_.erase(key);
                }
            }
        }
        return fut.get();
    }

private:
    std::mutex mu_;
    std::map<K, std::shared_future<Ptr>> entries_;
};

}  // namespace loopalg

#endif  // LOOPALG_MEMO_HPP
