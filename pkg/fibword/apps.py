from django.apps import AppConfig


class FibwordConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'fibword'
    verbose_name = 'Fibonacci words'
