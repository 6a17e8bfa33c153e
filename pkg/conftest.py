import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'rigidity_toolkit.settings')
django.setup()
