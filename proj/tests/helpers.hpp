#pragma once

#include "sdl/concept_class.hpp"

#include <array>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

namespace testing {

inline sdl::ConceptClass cls(std::size_t n, std::size_t L, std::vector<std::vector<sdl::LabelId>> rows) {
    return sdl::ConceptClass::from_rows(n, L, rows, sdl::DuplicateRows::reject);
}

inline sdl::ConceptClass cube(std::size_t n) {
    std::vector<std::vector<sdl::LabelId>> rows;
    for (std::size_t m = 0; m < (std::size_t(1) << n); ++m) {
        std::vector<sdl::LabelId> r;
        for (std::size_t x = 0; x < n; ++x) r.push_back((m >> x) & 1);
        rows.push_back(r);
    }
    return cls(n, 2, rows);
}

struct Run {
    int code = -1;
    std::string out;
};

/// Runs a shell command, capturing stdout.
inline Run run(const std::string& cmd) {
    Run r;
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    std::array<char, 4096> buf;
    std::size_t n;
    while ((n = fread(buf.data(), 1, buf.size(), p)) > 0) r.out.append(buf.data(), n);
    int status = pclose(p);
    r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return r;
}

}  // namespace testing
