#pragma once

#include <unistd.h>

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "mrfse/core.hpp"
#include "mrfse/rng.hpp"

namespace testing_helpers {

// Scratch directory removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        dir_ = std::filesystem::temp_directory_path() /
               ("mrfse_test_" + tag + "_" + std::to_string(::getpid()) + "_" +
                std::to_string(counter++));
        std::filesystem::create_directories(dir_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }
    std::string path(const std::string& name) const { return (dir_ / name).string(); }

private:
    std::filesystem::path dir_;
};

inline void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    out << content;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Runs the CLI binary; returns the exit code, captures stderr when asked.
inline int run_cli(const std::string& args, const std::string& stderr_path = "") {
    std::string cmd = std::string(MRFSE_CLI_PATH) + " " + args;
    if (!stderr_path.empty()) cmd += " 2> " + stderr_path;
    const int status = std::system(cmd.c_str());
    return WEXITSTATUS(status);
}

inline mrfse::Sample make_sample(int alphabet_size, const std::vector<std::string>& names,
                                 const std::vector<std::vector<int>>& rows) {
    mrfse::Sample s;
    for (int i = 0; i < alphabet_size; ++i) s.alphabet.labels.push_back(std::to_string(i));
    s.vertices.names = names;
    s.n = static_cast<std::int64_t>(rows.size());
    for (const auto& row : rows)
        for (int code : row) s.data.push_back(static_cast<std::uint8_t>(code));
    s.validate();
    return s;
}

inline mrfse::Sample random_sample(std::uint64_t seed, int p, std::int64_t n, int alphabet_size) {
    mrfse::SplitMix64 rng(seed);
    mrfse::Sample s;
    for (int i = 0; i < alphabet_size; ++i) s.alphabet.labels.push_back(std::to_string(i));
    for (int i = 1; i <= p; ++i) s.vertices.names.push_back("x" + std::to_string(i));
    s.n = n;
    s.data.resize(static_cast<std::size_t>(n) * p);
    for (auto& cell : s.data)
        cell = static_cast<std::uint8_t>(rng.next_below(static_cast<std::uint64_t>(alphabet_size)));
    return s;
}

}  // namespace testing_helpers
