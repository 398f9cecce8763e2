#include "qcqa/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return qcqa::run_cli(argc, argv, std::cout, std::cerr);
}
