from parkfun.cli import main

main()
