import os

import django

os.environ.setdefault("DJANGO_SETTINGS_MODULE", "primeformula.settings")
django.setup()
