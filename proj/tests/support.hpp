#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "landscape/core.hpp"
#include "landscape/linalg.hpp"
#include "landscape/random.hpp"

namespace testsupport {

inline std::filesystem::path scratch_dir(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("landscape_tests_" + name);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::size_t count_substr(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + needle.size())) ++n;
    return n;
}

/// Minimal well-formedness check: balanced, properly nested tags, quoted
/// attributes, no stray '<' or '&' in text.
inline bool well_formed_xml(const std::string& s, std::string* why = nullptr) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    auto fail = [&](const std::string& m) {
        if (why) *why = m + " at offset " + std::to_string(i);
        return false;
    };
    bool saw_root = false;
    while (i < s.size()) {
        if (s[i] == '&') {
            auto semi = s.find(';', i);
            if (semi == std::string::npos || semi - i > 8) return fail("bad entity");
            i = semi + 1;
            continue;
        }
        if (s[i] != '<') {
            ++i;
            continue;
        }
        if (s.compare(i, 5, "<?xml") == 0) {
            auto end = s.find("?>", i);
            if (end == std::string::npos) return fail("unterminated declaration");
            i = end + 2;
            continue;
        }
        if (s.compare(i, 2, "</") == 0) {
            auto end = s.find('>', i);
            if (end == std::string::npos) return fail("unterminated close tag");
            std::string name = s.substr(i + 2, end - i - 2);
            if (stack.empty() || stack.back() != name) return fail("mismatched close tag " + name);
            stack.pop_back();
            i = end + 1;
            continue;
        }
        std::size_t j = i + 1;
        while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '-' || s[j] == ':')) ++j;
        std::string name = s.substr(i + 1, j - i - 1);
        if (name.empty()) return fail("empty tag name");
        bool self_closing = false;
        while (true) {
            if (j >= s.size()) return fail("unterminated tag");
            if (s[j] == '"') {
                auto close = s.find('"', j + 1);
                if (close == std::string::npos) return fail("unterminated attribute");
                if (s.substr(j + 1, close - j - 1).find('<') != std::string::npos) return fail("'<' in attribute");
                j = close + 1;
                continue;
            }
            if (s[j] == '/' && j + 1 < s.size() && s[j + 1] == '>') {
                self_closing = true;
                j += 2;
                break;
            }
            if (s[j] == '>') {
                ++j;
                break;
            }
            ++j;
        }
        if (stack.empty()) {
            if (saw_root) return fail("second root element");
            saw_root = true;
        }
        if (!self_closing) stack.push_back(name);
        i = j;
    }
    if (!stack.empty()) return fail("unclosed " + stack.back());
    return saw_root || fail("no root element");
}

/// Q diag(lambda) Q^T with Q from Gram-Schmidt on Gaussian columns.
inline landscape::Matrix planted_symmetric(const std::vector<double>& lambda, std::uint64_t seed,
                                           landscape::Matrix* q_out = nullptr) {
    const std::size_t n = lambda.size();
    landscape::Rng rng(seed);
    std::vector<std::vector<double>> q;
    while (q.size() < n) {
        std::vector<double> v(n);
        for (double& x : v) x = rng.normal();
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& u : q) {
                double d = 0;
                for (std::size_t k = 0; k < n; ++k) d += u[k] * v[k];
                for (std::size_t k = 0; k < n; ++k) v[k] -= d * u[k];
            }
        double norm = 0;
        for (double x : v) norm += x * x;
        norm = std::sqrt(norm);
        if (norm < 1e-8) continue;
        for (double& x : v) x /= norm;
        q.push_back(v);
    }
    landscape::Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            double s = 0;
            for (std::size_t k = 0; k < n; ++k) s += q[k][i] * lambda[k] * q[k][j];
            a(i, j) = s;
        }
    if (q_out) {
        *q_out = landscape::Matrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t k = 0; k < n; ++k) (*q_out)(i, k) = q[k][i];
    }
    return a.symmetrized();
}

} // namespace testsupport
