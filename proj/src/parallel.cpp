#include "csrbf/parallel.hpp"

#include <charconv>
#include <cstdlib>
#include <string_view>

namespace csrbf {

unsigned worker_count() {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const char* env = std::getenv("CSRBF_THREADS");
  if (env == nullptr) return hw;
  const std::string_view text(env);
  unsigned value = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) return hw;
  return value == 0 ? 1u : value;
}

}  // namespace csrbf
