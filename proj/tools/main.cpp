// Copyright (c) unreal contributors.
// SPDX-License-Identifier: Apache-2.0
#include <iostream>

#include "unreal/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return unreal::cli::run(args, std::cout, std::cerr);
}
