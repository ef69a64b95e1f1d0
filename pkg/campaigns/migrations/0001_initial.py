# Generated by Django 5.2.8 on 2026-10-18 09:12

from django.db import migrations, models


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='CampaignRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('created_at', models.DateTimeField(auto_now_add=True, db_index=True)),
                ('updated_at', models.DateTimeField(auto_now=True)),
                ('theorem_id', models.CharField(help_text='Campaign identifier, e.g. t03-odd', max_length=32)),
                ('field_token', models.CharField(help_text='Field the campaign ran over, e.g. gf3 or rational', max_length=32)),
                ('seed', models.BigIntegerField(default=0, help_text='Seed echoed from the command line')),
                ('budget', models.BigIntegerField(blank=True, help_text='Coset or search budget, if one was given', null=True)),
                ('status', models.CharField(choices=[('pass', 'Pass'), ('fail', 'Fail'), ('budget', 'Budget exceeded')], default='pass', help_text='Overall campaign outcome', max_length=10)),
                ('scanned', models.PositiveIntegerField(default=0)),
                ('passed', models.PositiveIntegerField(default=0)),
                ('failed', models.PositiveIntegerField(default=0)),
                ('skipped', models.PositiveIntegerField(default=0)),
                ('wall_time', models.FloatField(default=0.0, help_text='Wall time in seconds')),
                ('report', models.JSONField(default=dict, help_text='The full JSON report')),
            ],
            options={
                'verbose_name': 'Campaign Run',
                'verbose_name_plural': 'Campaign Runs',
                'db_table': 'campaign_runs',
                'ordering': ['-created_at'],
                'get_latest_by': 'created_at',
                'abstract': False,
                'indexes': [models.Index(fields=['theorem_id'], name='campaign_ru_theorem_5c1e2a_idx'), models.Index(fields=['status'], name='campaign_ru_status_9b07d4_idx')],
            },
        ),
    ]
