#pragma once

#include <filesystem>
#include <string>

#include <unistd.h>

namespace logiciot::testing
{

/// Fresh directory under the system temp dir, removed on destruction.
struct TempDir
{
  std::filesystem::path path;

  TempDir()
  {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("logiciot-" + std::to_string(::getpid()) + "-" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }

  TempDir(const TempDir &) = delete;
  TempDir & operator=(const TempDir &) = delete;
};

}  // namespace logiciot::testing
