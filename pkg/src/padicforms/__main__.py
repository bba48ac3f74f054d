from padicforms.cli import main

raise SystemExit(main())
