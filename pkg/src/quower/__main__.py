from quower.cli import main

raise SystemExit(main())
