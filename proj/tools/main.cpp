#include <iostream>

#include "dercent/cli.hpp"

int main(int argc, char** argv)
{
    return dercent::cli::run(std::vector<std::string>(argv + 1, argv + argc), std::cout, std::cerr);
}
