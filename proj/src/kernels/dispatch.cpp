#include <atomic>
#include <cstdlib>
#include <string>

#include "opsplit/error.hpp"
#include "opsplit/kernels.hpp"

namespace opsplit::kernels {

namespace detail {
#ifndef OPSPLIT_HAVE_AVX2
const KernelTable* avx2_table() { return nullptr; }
#endif
#ifndef OPSPLIT_HAVE_NEON
const KernelTable* neon_table() { return nullptr; }
#endif
}  // namespace detail

namespace {

const KernelTable* resolve_default() {
  if (const char* env = std::getenv("OPSPLIT_KERNELS")) {
    if (auto b = parse_backend(env)) {
      if (const KernelTable* t = table_for(*b)) return t;
    }
    // Unknown or unavailable request: fall through to autodetection.
  }
  if (const KernelTable* t = detail::avx2_table()) return t;
  if (const KernelTable* t = detail::neon_table()) return t;
  return &scalar_table();
}

std::atomic<const KernelTable*>& slot() {
  static std::atomic<const KernelTable*> s{resolve_default()};
  return s;
}

}  // namespace

const KernelTable* table_for(Backend backend) {
  switch (backend) {
    case Backend::scalar: return &scalar_table();
    case Backend::avx2: return detail::avx2_table();
    case Backend::neon: return detail::neon_table();
  }
  return nullptr;
}

bool available(Backend backend) { return table_for(backend) != nullptr; }

const KernelTable& active() { return *slot().load(std::memory_order_acquire); }

void set_backend(Backend backend) {
  const KernelTable* t = table_for(backend);
  if (t == nullptr) {
    fail(ErrorKind::invalid_input,
         "kernel backend '" + std::string(to_string(backend)) + "' is not available");
  }
  slot().store(t, std::memory_order_release);
}

std::string_view to_string(Backend backend) {
  switch (backend) {
    case Backend::scalar: return "scalar";
    case Backend::avx2: return "avx2";
    case Backend::neon: return "neon";
  }
  return "unknown";
}

std::optional<Backend> parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::scalar;
  if (name == "avx2") return Backend::avx2;
  if (name == "neon") return Backend::neon;
  return std::nullopt;
}

}  // namespace opsplit::kernels
