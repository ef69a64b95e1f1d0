from django.apps import AppConfig


class NormalformConfig(AppConfig):
    default_auto_field = 'django.db.models.BigAutoField'
    name = 'normalform'
    verbose_name = 'Normal forms of central ideals'
