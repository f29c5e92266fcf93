#include "cli_args.hpp"

#include <iostream>

int main( int argc, char** argv )
{
    return semsplit::cli::main_with_args( argc, argv, std::cin, std::cout, std::cerr );
}
