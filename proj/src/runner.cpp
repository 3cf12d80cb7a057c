#include "epitheta/runner.hpp"

namespace epitheta {

std::uint64_t mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

Check run_cases(std::string name, std::string anchor, std::uint64_t n, const Executor* exec,
                const std::function<std::optional<std::string>(std::uint64_t)>& body) {
  Check c{std::move(name), std::move(anchor)};
  Executor serial(1);
  const Executor& ex = exec ? *exec : serial;
  struct Part {
    std::uint64_t count = 0;
    std::optional<std::string> bad;
  };
  auto parts = ex.map_blocks<Part>(n, [&](std::uint64_t b, std::uint64_t e) {
    Part p;
    for (std::uint64_t i = b; i < e; ++i) {
      ++p.count;
      if (auto r = body(i)) {
        p.bad = *r;
        break;
      }
    }
    return p;
  });
  for (auto& p : parts) {
    c.cases += p.count;
    if (p.bad) {
      c.fail(*p.bad);
      break;
    }
  }
  return c;
}

}  // namespace epitheta
