#include "degenfront/numerics.hpp"

#include <cstdio>
#include <cstdlib>
#include <future>
#include <thread>

namespace degenfront {

std::string fnv1a_hex(const std::string& bytes) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(fnv1a(bytes)));
    return std::string(buf);
}

unsigned thread_cap() {
    unsigned cap = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("DEGEN_FRONT_THREADS")) {
        const long v = std::strtol(env, nullptr, 10);
        if (v >= 1) cap = static_cast<unsigned>(v);
    }
    return cap;
}

void parallel_for_index(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned cap = thread_cap();
    if (cap <= 1 || n <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    const unsigned workers = static_cast<unsigned>(std::min<std::size_t>(cap, n));
    std::vector<std::future<void>> futs;
    futs.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        futs.push_back(std::async(std::launch::async, [&, w]() {
            for (std::size_t i = w; i < n; i += workers) body(i);
        }));
    }
    for (auto& f : futs) f.get();
}

} // namespace degenfront
