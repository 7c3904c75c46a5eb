# Generated by Django 4.2.27 on 2026-10-19 09:12

from django.db import migrations, models
import django.db.models.deletion


SHAPE_CHOICES = [
    ('tower', 'Maximally shared tower'),
    ('twin-shared', 'Two roots over one shared tower'),
    ('twin-disjoint', 'Two identity-disjoint towers under one root'),
]
VARIANT_CHOICES = [
    (1, 'no-cache'),
    (2, 'memo-slow-eq-slow-hash'),
    (3, 'memo-slow-eq-fast-hash'),
    (4, 'memo-fast-eq-slow-hash'),
    (5, 'memo-fast-eq-fast-hash'),
    (6, 'memo-fast-eq-fast-hash-shared'),
    (7, 'id-cache'),
    (8, 'id-cache-shared'),
]


class Migration(migrations.Migration):

    initial = True

    dependencies = [
    ]

    operations = [
        migrations.CreateModel(
            name='BenchRun',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('command', models.CharField(choices=[('run', 'Run'), ('sweep', 'Sweep')], max_length=10)),
                ('shape', models.CharField(choices=SHAPE_CHOICES, max_length=20)),
                ('budget', models.PositiveBigIntegerField(blank=True, null=True)),
                ('bucket_count', models.PositiveIntegerField(blank=True, null=True)),
                ('deterministic_ids', models.BooleanField(default=False)),
                ('created_at', models.DateTimeField(auto_now_add=True)),
            ],
            options={
                'ordering': ['-created_at'],
            },
        ),
        migrations.CreateModel(
            name='BenchRow',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('position', models.PositiveIntegerField()),
                ('shape', models.CharField(choices=SHAPE_CHOICES, max_length=20)),
                ('n', models.PositiveIntegerField()),
                ('variant', models.PositiveSmallIntegerField(choices=VARIANT_CHOICES)),
                ('value_mod64', models.CharField(blank=True, max_length=20)),
                ('visits', models.PositiveBigIntegerField()),
                ('wall_nanos', models.PositiveBigIntegerField()),
                ('budget_exhausted', models.BooleanField(default=False)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='records', to='bench.benchrun')),
            ],
            options={
                'ordering': ['run', 'position'],
            },
        ),
        migrations.CreateModel(
            name='VariantVerdict',
            fields=[
                ('id', models.BigAutoField(auto_created=True, primary_key=True, serialize=False, verbose_name='ID')),
                ('variant', models.PositiveSmallIntegerField(choices=VARIANT_CHOICES)),
                ('verdict', models.CharField(choices=[('linear', 'Linear'), ('superlinear', 'Superlinear')], max_length=12)),
                ('ratio', models.FloatField(blank=True, null=True)),
                ('samples', models.PositiveIntegerField(default=0)),
                ('run', models.ForeignKey(on_delete=django.db.models.deletion.CASCADE, related_name='verdicts', to='bench.benchrun')),
            ],
        ),
        migrations.AddIndex(
            model_name='benchrow',
            index=models.Index(fields=['shape', 'variant', 'n'], name='benchrow_shape_variant_n_idx'),
        ),
        migrations.AddConstraint(
            model_name='benchrow',
            constraint=models.UniqueConstraint(fields=('run', 'position'), name='benchrow_run_position_unique'),
        ),
        migrations.AddConstraint(
            model_name='variantverdict',
            constraint=models.UniqueConstraint(fields=('run', 'variant'), name='variantverdict_run_variant_unique'),
        ),
    ]
