#include "io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "entkit/errors.hpp"

namespace fs = std::filesystem;

namespace entkit::cli {

std::vector<unsigned char> read_input(const std::string& path) {
  if (path == "-") {
    std::vector<unsigned char> data;
    char buffer[4096];
    while (std::cin.read(buffer, sizeof buffer) || std::cin.gcount() > 0) {
      data.insert(data.end(), buffer, buffer + std::cin.gcount());
      if (!std::cin) break;
    }
    return data;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read input file: " + path);
  std::vector<unsigned char> data{std::istreambuf_iterator<char>(in),
                                  std::istreambuf_iterator<char>()};
  if (in.bad()) throw Error("error while reading: " + path);
  return data;
}

void strip_trailing_newline(std::vector<unsigned char>& data) {
  if (!data.empty() && data.back() == '\n') data.pop_back();
  if (!data.empty() && data.back() == '\r') data.pop_back();
}

namespace {

void write_file_atomically(const std::string& path, const void* bytes, std::size_t size) {
  fs::path target(path);
  fs::path dir = target.parent_path();
  fs::path temp = (dir.empty() ? fs::path(".") : dir) / (target.filename().string() + ".tmp");
  {
    std::ofstream out(temp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write output file: " + path);
    out.write(static_cast<const char*>(bytes), static_cast<std::streamsize>(size));
    if (!out) throw Error("error while writing: " + path);
  }
  std::error_code ec;
  fs::rename(temp, target, ec);
  if (ec) {
    fs::remove(temp);
    throw Error("cannot move output into place: " + path + " (" + ec.message() + ")");
  }
}

}  // namespace

void write_output(const std::string& path, const std::string& data) {
  if (path.empty() || path == "-") {
    std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  write_file_atomically(path, data.data(), data.size());
}

void write_output(const std::string& path, const std::vector<unsigned char>& data) {
  if (path.empty() || path == "-") {
    std::cout.write(reinterpret_cast<const char*>(data.data()),
                    static_cast<std::streamsize>(data.size()));
    std::cout.flush();
    return;
  }
  write_file_atomically(path, data.data(), data.size());
}

namespace {

void load_one(CorpusLoad& load, const std::string& label, const fs::path& path,
              bool strip_newlines) {
  for (const CorpusFile& existing : load.files) {
    if (existing.label == label) {
      load.errors.push_back("duplicate label: " + label);
      return;
    }
  }
  try {
    CorpusFile file{label, path.string(), read_input(path.string())};
    if (strip_newlines) strip_trailing_newline(file.bytes);
    if (file.bytes.empty()) {
      load.errors.push_back(label + ": file is empty");
      return;
    }
    load.files.push_back(std::move(file));
  } catch (const Error& e) {
    load.errors.push_back(label + ": " + e.what());
  }
}

}  // namespace

CorpusLoad load_corpus(const std::string& manifest_path, bool strip_newlines) {
  CorpusLoad load;
  fs::path manifest(manifest_path);
  std::error_code ec;
  if (fs::is_directory(manifest, ec)) {
    std::vector<fs::path> entries;
    for (const auto& entry : fs::directory_iterator(manifest)) {
      if (entry.is_regular_file()) entries.push_back(entry.path());
    }
    std::sort(entries.begin(), entries.end(),
              [](const fs::path& a, const fs::path& b) { return a.filename() < b.filename(); });
    for (const fs::path& path : entries) {
      load_one(load, path.filename().string(), path, strip_newlines);
    }
    return load;
  }

  std::ifstream in(manifest);
  if (!in) throw Error("cannot read manifest: " + manifest_path);
  fs::path base = manifest.parent_path();
  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const std::size_t comma = line.find(',');
    if (comma == std::string::npos || comma == 0) {
      load.errors.push_back("manifest line " + std::to_string(line_number) +
                            ": expected \"label,path\"");
      continue;
    }
    const std::string label = line.substr(0, comma);
    fs::path path(line.substr(comma + 1));
    if (path.is_relative()) path = base / path;
    load_one(load, label, path, strip_newlines);
  }
  return load;
}

}  // namespace entkit::cli
