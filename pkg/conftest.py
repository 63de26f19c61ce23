import os

import django

os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'fibonacci_lab.settings')
django.setup()
