#include <string>
#include <vector>

#include "umebmub/cli.hpp"

int main(int argc, char** argv) {
    return umebmub::cli::run(std::vector<std::string>(argv, argv + argc));
}
